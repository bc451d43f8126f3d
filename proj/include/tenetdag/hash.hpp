#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace tenetdag {

/// 32-byte SHA-256 digest. Used both as a component/workflow signature and
/// as a payload content digest.
class Signature {
public:
    using Bytes = std::array<std::uint8_t, 32>;

    Signature() = default;
    explicit Signature(const Bytes& bytes) : bytes_(bytes) {}

    const Bytes& bytes() const { return bytes_; }
    /// Lowercase, 64 characters.
    std::string hex() const;
    /// First five hex characters, for human-readable tables only.
    std::string short_hex() const { return hex().substr(0, 5); }

    /// Accepts upper- or lowercase; throws InvalidArgument on bad input.
    static Signature from_hex(std::string_view hex);

    friend auto operator<=>(const Signature&, const Signature&) = default;

private:
    Bytes bytes_{};
};

Signature sha256(std::span<const std::uint8_t> data);
Signature sha256(std::string_view data);

/// Incremental hashing for prefix-tagged inputs.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(std::span<const std::uint8_t> data);
    Sha256& update(std::string_view data);
    Sha256& update(std::uint8_t byte);
    Signature finish();

private:
    void* ctx_;
};

} // namespace tenetdag
