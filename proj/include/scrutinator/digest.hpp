#pragma once

#include <openssl/evp.h>

#include <memory>
#include <string_view>

#include "scrutinator/bytes.hpp"
#include "scrutinator/errors.hpp"

namespace scrut {

enum class HashAlgo { md5, sha1, sha256 };

inline std::size_t digest_length(HashAlgo algo) {
  switch (algo) {
    case HashAlgo::md5: return 16;
    case HashAlgo::sha1: return 20;
    case HashAlgo::sha256: return 32;
  }
  return 0;
}

inline Bytes compute_digest(HashAlgo algo, std::string_view data) {
  const EVP_MD* md = nullptr;
  switch (algo) {
    case HashAlgo::md5: md = EVP_md5(); break;
    case HashAlgo::sha1: md = EVP_sha1(); break;
    case HashAlgo::sha256: md = EVP_sha256(); break;
  }
  unsigned char buf[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), buf, &len) != 1) {
    throw InternalError("digest computation failed");
  }
  return Bytes(reinterpret_cast<char*>(buf), len);
}

inline std::string sha256_hex(std::string_view data) {
  return hex_encode(compute_digest(HashAlgo::sha256, data));
}

}  // namespace scrut
