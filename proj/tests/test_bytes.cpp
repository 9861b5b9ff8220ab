#include <gtest/gtest.h>

#include "scrutinator/bytes.hpp"
#include "scrutinator/digest.hpp"

namespace scrut {
namespace {

TEST(Bytes, HexEncodeDecode) {
  EXPECT_EQ(hex_encode("abc"), "616263");
  EXPECT_EQ(hex_encode("abc", true), "616263");
  EXPECT_EQ(hex_encode(std::string("\x00\xff\x10", 3)), "00ff10");
  EXPECT_EQ(hex_encode(std::string("\xde\xad", 2), true), "DEAD");
  EXPECT_EQ(hex_decode("616263").value(), "abc");
  EXPECT_EQ(hex_decode("DEAD").value(), "\xde\xad");
  EXPECT_FALSE(hex_decode("abc").has_value());   // odd length
  EXPECT_FALSE(hex_decode("zz").has_value());    // not hex
  EXPECT_EQ(hex_decode("").value(), "");
}

TEST(Bytes, HexEncodeOfIdentifierText) {
  EXPECT_EQ(hex_encode("352066060926230"), "333532303636303630393236323330");
  EXPECT_EQ(hex_encode("a0:b1:c2:d3:e4:f5"),
            "61303a62313a63323a64333a65343a6635");
}

TEST(Bytes, PercentDecode) {
  EXPECT_EQ(percent_decode("a0%3Ab1"), "a0:b1");
  EXPECT_EQ(percent_decode("no-escapes"), "no-escapes");
  EXPECT_EQ(percent_decode("%41%42"), "AB");
  EXPECT_EQ(percent_decode("%4"), "%4");     // truncated escape stays literal
  EXPECT_EQ(percent_decode("%zz1"), "%zz1");  // bad escape stays literal
  EXPECT_EQ(percent_decode("100%25"), "100%");
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(hex_encode(compute_digest(HashAlgo::md5, "abc")),
            "900150983cd24fb0d6963f7d28e17f72");
  EXPECT_EQ(hex_encode(compute_digest(HashAlgo::sha1, "abc")),
            "a9993e364706816aba3e25717850c26c9cd0d89d");
  EXPECT_EQ(hex_encode(compute_digest(HashAlgo::sha256, "abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(hex_encode(compute_digest(HashAlgo::md5, "352066060926230")),
            "7af1f92396144cffca86f04b6ea27201");
  EXPECT_EQ(digest_length(HashAlgo::md5), 16u);
  EXPECT_EQ(digest_length(HashAlgo::sha1), 20u);
  EXPECT_EQ(digest_length(HashAlgo::sha256), 32u);
}

}  // namespace
}  // namespace scrut
