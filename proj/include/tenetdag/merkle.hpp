#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tenetdag/hash.hpp"
#include "tenetdag/value.hpp"

namespace tenetdag {

/// One canonicalized provenance entry.
struct Leaf {
    std::string key;
    /// Typed encoding of the value (see encode_value).
    std::string value;

    static Leaf make(std::string key, const AttrValue& value);
    /// The bytes that get hashed: escaped key, '=', typed value.
    std::string bytes() const;

    friend auto operator<=>(const Leaf&, const Leaf&) = default;
};

namespace merkle {
/// H(0x00 || bytes)
Signature leaf_digest(std::string_view bytes);
/// H(0x01 || left || right)
Signature node_digest(const Signature& left, const Signature& right);
/// H(0x02)
Signature empty_root();
} // namespace merkle

/// Merkle tree over a leaf multiset. Leaves are sorted before hashing so
/// the root does not depend on input order; an odd node at any level is
/// paired with itself.
class MerkleTree {
public:
    explicit MerkleTree(std::vector<Leaf> leaves);

    const Signature& root() const { return root_; }
    const std::vector<Leaf>& leaves() const { return leaves_; }
    std::size_t leaf_count() const { return leaves_.size(); }
    /// Digest levels, leaf level first and root level last. Empty for a tree without leaves.
    const std::vector<std::vector<Signature>>& levels() const { return levels_; }
    /// ceil(log2 n); zero for n <= 1.
    std::size_t height() const { return levels_.empty() ? 0 : levels_.size() - 1; }

private:
    std::vector<Leaf> leaves_;
    std::vector<std::vector<Signature>> levels_;
    Signature root_;
};

inline MerkleTree build_tree(std::vector<Leaf> leaves) { return MerkleTree(std::move(leaves)); }

} // namespace tenetdag
