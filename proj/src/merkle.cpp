#include "tenetdag/merkle.hpp"

#include <algorithm>

namespace tenetdag {

Leaf Leaf::make(std::string key, const AttrValue& value) { return Leaf{std::move(key), encode_value(value)}; }

std::string Leaf::bytes() const {
    return escape_key(key) + "=" + value;
}

namespace merkle {

Signature leaf_digest(std::string_view bytes) { return Sha256().update(std::uint8_t{0x00}).update(bytes).finish(); }

Signature node_digest(const Signature& left, const Signature& right) {
    return Sha256().update(std::uint8_t{0x01}).update(left.bytes()).update(right.bytes()).finish();
}

Signature empty_root() { return Sha256().update(std::uint8_t{0x02}).finish(); }

} // namespace merkle

MerkleTree::MerkleTree(std::vector<Leaf> leaves) : leaves_(std::move(leaves)) {
    std::sort(leaves_.begin(), leaves_.end());
    if (leaves_.empty()) {
        root_ = merkle::empty_root();
        return;
    }

    Sha256 h;
    std::vector<Signature> level;
    level.reserve(leaves_.size());
    for (const auto& leaf : leaves_) level.push_back(h.update(std::uint8_t{0x00}).update(leaf.bytes()).finish());
    levels_.push_back(std::move(level));

    while (levels_.back().size() > 1) {
        const auto& below = levels_.back();
        std::vector<Signature> above;
        above.reserve((below.size() + 1) / 2);
        for (std::size_t i = 0; i < below.size(); i += 2) {
            const Signature& left = below[i];
            const Signature& right = i + 1 < below.size() ? below[i + 1] : below[i];
            above.push_back(h.update(std::uint8_t{0x01}).update(left.bytes()).update(right.bytes()).finish());
        }
        levels_.push_back(std::move(above));
    }
    root_ = levels_.back().front();
}

} // namespace tenetdag
