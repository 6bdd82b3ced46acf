#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "honeytext/dte.hpp"
#include "honeytext/pipeline.hpp"
#include "honeytext/rng.hpp"

namespace honeytext {

struct KdfParams {
  // PBKDF2-HMAC-SHA256 rounds applied to the password before masking.
  // 0 disables strengthening and masks with the raw password as HMAC key.
  std::uint32_t iterations = 10000;
};

// Everything the decryptor needs, and everything an attacker gets: the
// masked seed (r, c) plus the full candidate table. Secrecy rests on the
// true message being indistinguishable among the entries, not on hiding
// the entries.
struct CiphertextPackage {
  std::uint8_t version = 1;
  unsigned bit_width = 0;  // log2 of the table size
  std::array<std::uint8_t, 16> r{};
  std::uint64_t c = 0;  // seed XOR keyed_expand(password, r, bit_width)
  std::vector<std::string> entries;
  KdfParams kdf;

  std::size_t table_size() const { return entries.size(); }
};

std::array<std::uint8_t, 32> hmac_sha256(const std::uint8_t* key,
                                         std::size_t key_len,
                                         const std::uint8_t* data,
                                         std::size_t data_len);

// Mask derivation: HMAC-SHA256 over r, keyed by the (optionally
// strengthened) password; the leading 8 digest bytes are read as a
// big-endian integer and truncated to the low `bits` bits. bits in [1, 64].
std::uint64_t keyed_expand(const std::string& password,
                           const std::uint8_t* r, std::size_t r_len,
                           unsigned bits, std::uint32_t iterations);

CiphertextPackage he_encrypt(const std::string& password,
                             const std::string& message,
                             const DecoyPipeline& pipeline,
                             std::size_t table_size, const KdfParams& kdf,
                             Rng& rng);

// Unmasks the seed under the given password and returns that table entry.
// Wrong passwords land on a decoy; there is no failure path by design.
std::string he_decrypt(const std::string& password,
                       const CiphertextPackage& package);

// Binary layout: "HNYC", version byte, log2-T byte, 4-byte BE kdf
// iterations, 16-byte r, 8-byte BE c, then T entries each as 4-byte BE
// length + UTF-8 bytes. Byte-exact across platforms.
void write_package(const CiphertextPackage& package, const std::string& path);
CiphertextPackage read_package(const std::string& path);

std::string serialize_package(const CiphertextPackage& package);
CiphertextPackage deserialize_package(const std::string& bytes);

}  // namespace honeytext
