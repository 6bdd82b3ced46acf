#include "honeytext/he.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include <openssl/core_names.h>
#include <openssl/evp.h>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

constexpr char kMagic[4] = {'H', 'N', 'Y', 'C'};

std::array<std::uint8_t, 32> pbkdf2_sha256(const std::string& password,
                                           const std::uint8_t* salt,
                                           std::size_t salt_len,
                                           std::uint32_t iterations) {
  std::array<std::uint8_t, 32> key{};
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()),
                        salt, static_cast<int>(salt_len),
                        static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(key.size()), key.data()) != 1) {
    throw Error("key derivation failed");
  }
  return key;
}

void append_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

void append_be64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

// Bounds-checked cursor over an in-memory package image.
struct Reader {
  const std::string& bytes;
  std::size_t pos = 0;

  const std::uint8_t* take(std::size_t n) {
    if (bytes.size() - pos < n) {
      throw ParseError("package truncated");
    }
    const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data()) + pos;
    pos += n;
    return p;
  }
  std::uint32_t be32() {
    const std::uint8_t* p = take(4);
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
  }
  std::uint64_t be64() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
  }
};

}  // namespace

std::array<std::uint8_t, 32> hmac_sha256(const std::uint8_t* key,
                                         std::size_t key_len,
                                         const std::uint8_t* data,
                                         std::size_t data_len) {
  std::array<std::uint8_t, 32> out{};
  EVP_MAC* mac = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
  if (!mac) throw Error("HMAC implementation unavailable");
  EVP_MAC_CTX* ctx = EVP_MAC_CTX_new(mac);
  EVP_MAC_free(mac);
  if (!ctx) throw Error("HMAC context allocation failed");

  char digest_name[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
      OSSL_PARAM_construct_end()};
  std::size_t out_len = 0;
  bool ok = EVP_MAC_init(ctx, key, key_len, params) == 1 &&
            EVP_MAC_update(ctx, data, data_len) == 1 &&
            EVP_MAC_final(ctx, out.data(), &out_len, out.size()) == 1 &&
            out_len == out.size();
  EVP_MAC_CTX_free(ctx);
  if (!ok) throw Error("HMAC computation failed");
  return out;
}

std::uint64_t keyed_expand(const std::string& password, const std::uint8_t* r,
                           std::size_t r_len, unsigned bits,
                           std::uint32_t iterations) {
  if (bits == 0 || bits > 64) {
    throw InputError("mask width must be in [1, 64] bits");
  }
  std::array<std::uint8_t, 32> digest{};
  if (iterations == 0) {
    digest = hmac_sha256(
        reinterpret_cast<const std::uint8_t*>(password.data()),
        password.size(), r, r_len);
  } else {
    auto key = pbkdf2_sha256(password, r, r_len, iterations);
    digest = hmac_sha256(key.data(), key.size(), r, r_len);
  }
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | digest[i];
  if (bits == 64) return value;
  return value & ((std::uint64_t{1} << bits) - 1);
}

CiphertextPackage he_encrypt(const std::string& password,
                             const std::string& message,
                             const DecoyPipeline& pipeline,
                             std::size_t table_size, const KdfParams& kdf,
                             Rng& rng) {
  if (password.empty()) throw InputError("password is empty");
  if (message.empty()) throw InputError("message is empty");

  auto [table, seed] = encode(message, pipeline, table_size, rng);

  CiphertextPackage package;
  package.version = 1;
  package.bit_width = seed.bit_width;
  rng.fill_bytes(package.r.data(), package.r.size());
  std::uint64_t mask = keyed_expand(password, package.r.data(),
                                    package.r.size(), package.bit_width,
                                    kdf.iterations);
  package.c = seed.value ^ mask;
  package.entries = std::move(table.entries);
  package.kdf = kdf;
  return package;
}

std::string he_decrypt(const std::string& password,
                       const CiphertextPackage& package) {
  if (package.entries.empty() ||
      package.entries.size() != (std::size_t{1} << package.bit_width)) {
    throw InputError("package table does not match its declared size");
  }
  std::uint64_t mask =
      keyed_expand(password, package.r.data(), package.r.size(),
                   package.bit_width, package.kdf.iterations);
  DecoyTable table;
  table.size = package.entries.size();
  table.entries = package.entries;
  Seed seed{package.c ^ mask, package.bit_width};
  return decode(table, seed);
}

std::string serialize_package(const CiphertextPackage& package) {
  if (package.bit_width == 0 || package.bit_width > 32) {
    throw InputError("package table size out of range");
  }
  if (package.entries.size() != (std::size_t{1} << package.bit_width)) {
    throw InputError("package entry count does not match bit width");
  }
  if (package.c >> package.bit_width) {
    throw InputError("masked seed exceeds the seed space");
  }
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(package.version));
  out.push_back(static_cast<char>(package.bit_width));
  append_be32(out, package.kdf.iterations);
  out.append(reinterpret_cast<const char*>(package.r.data()),
             package.r.size());
  append_be64(out, package.c);
  for (const auto& entry : package.entries) {
    if (entry.empty()) throw InputError("package has an empty table entry");
    append_be32(out, static_cast<std::uint32_t>(entry.size()));
    out.append(entry);
  }
  return out;
}

CiphertextPackage deserialize_package(const std::string& bytes) {
  Reader reader{bytes};
  const std::uint8_t* magic = reader.take(4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("not a ciphertext package (bad magic)");
  }
  CiphertextPackage package;
  package.version = *reader.take(1);
  if (package.version != 1) {
    throw ParseError("unsupported package version " +
                     std::to_string(package.version));
  }
  unsigned bit_width = *reader.take(1);
  if (bit_width == 0 || bit_width > 32) {
    throw ParseError("table size out of range");
  }
  package.bit_width = bit_width;
  package.kdf.iterations = reader.be32();
  const std::uint8_t* r = reader.take(package.r.size());
  std::copy(r, r + package.r.size(), package.r.begin());
  package.c = reader.be64();
  if (package.c >> bit_width) {
    throw ParseError("masked seed exceeds the seed space");
  }
  const std::size_t count = std::size_t{1} << bit_width;
  package.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t len = reader.be32();
    if (len == 0) throw ParseError("empty table entry");
    const std::uint8_t* p = reader.take(len);
    package.entries.emplace_back(reinterpret_cast<const char*>(p), len);
  }
  if (reader.pos != bytes.size()) {
    throw ParseError("trailing bytes after package");
  }
  return package;
}

void write_package(const CiphertextPackage& package, const std::string& path) {
  std::string bytes = serialize_package(package);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write package file: " + path);
  out.write(bytes.data(), static_cast<long>(bytes.size()));
  if (!out) throw ResourceError("failed writing package file: " + path);
}

CiphertextPackage read_package(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open package file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return deserialize_package(bytes);
}

}  // namespace honeytext
