#include "tenetdag/hash.hpp"

#include <openssl/evp.h>

#include <new>

#include "tenetdag/error.hpp"

namespace tenetdag {
namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

} // namespace

std::string Signature::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(64, '0');
    for (std::size_t i = 0; i < bytes_.size(); ++i) {
        out[2 * i] = digits[bytes_[i] >> 4];
        out[2 * i + 1] = digits[bytes_[i] & 0x0f];
    }
    return out;
}

Signature Signature::from_hex(std::string_view hex) {
    if (hex.size() != 64) throw InvalidArgument("digest hex must be 64 characters, got " + std::to_string(hex.size()));
    Bytes bytes{};
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw InvalidArgument("invalid hex digit in digest: " + std::string(hex));
        bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return Signature(bytes);
}

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr) != 1) throw std::bad_alloc();
}

Sha256::~Sha256() { EVP_MD_CTX_free(as_ctx(ctx_)); }

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
    EVP_DigestUpdate(as_ctx(ctx_), data.data(), data.size());
    return *this;
}

Sha256& Sha256::update(std::string_view data) {
    EVP_DigestUpdate(as_ctx(ctx_), data.data(), data.size());
    return *this;
}

Sha256& Sha256::update(std::uint8_t byte) {
    EVP_DigestUpdate(as_ctx(ctx_), &byte, 1);
    return *this;
}

Signature Sha256::finish() {
    Signature::Bytes out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(as_ctx(ctx_), out.data(), &len);
    EVP_DigestInit_ex(as_ctx(ctx_), EVP_sha256(), nullptr);
    return Signature(out);
}

Signature sha256(std::span<const std::uint8_t> data) { return Sha256().update(data).finish(); }

Signature sha256(std::string_view data) { return Sha256().update(data).finish(); }

} // namespace tenetdag
