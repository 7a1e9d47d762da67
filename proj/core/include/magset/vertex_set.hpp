#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace magset {

/// A subset of the vertices 0..n-1, stored as a bitmask.  The numeric value
/// of the mask is the canonical total order used everywhere determinism
/// matters (sorted families, text output, tie-breaking).
class VertexSet {
public:
    constexpr VertexSet() : bits_(0) {}
    constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<int> vs) : bits_(0) {
        for (int v : vs) bits_ |= (1u << v);
    }

    static constexpr VertexSet full(int n) {
        return VertexSet(n >= 32 ? ~0u : ((1u << n) - 1u));
    }
    static constexpr VertexSet single(int v) { return VertexSet(1u << v); }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }

    constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }
    constexpr bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }

    VertexSet with(int v) const { return VertexSet(bits_ | (1u << v)); }
    VertexSet without(int v) const { return VertexSet(bits_ & ~(1u << v)); }

    int min() const { return std::countr_zero(bits_); }
    int max() const { return 31 - std::countl_zero(bits_); }

    constexpr bool operator==(const VertexSet&) const = default;
    constexpr auto operator<=>(const VertexSet& o) const { return bits_ <=> o.bits_; }

    class iterator {
    public:
        explicit iterator(std::uint32_t rest) : rest_(rest) {}
        int operator*() const { return std::countr_zero(rest_); }
        iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest_ != o.rest_; }
    private:
        std::uint32_t rest_;
    };
    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int v : *this) out.push_back(v);
        return out;
    }

private:
    std::uint32_t bits_;
};

/// Calls fn(S) for every subset S of `set` (including the empty set and
/// `set` itself), in increasing numeric order of the mask.
template <typename Fn>
void for_each_subset(VertexSet set, Fn&& fn) {
    std::uint32_t m = set.bits();
    std::uint32_t sub = 0;
    while (true) {
        fn(VertexSet(sub));
        if (sub == m) break;
        sub = (sub - m) & m;
    }
}

/// A conditional independence statement <A, B | C>.  A and B are nonempty
/// and A, B, C are pairwise disjoint; violations are rejected here so the
/// separation and imset routines never see a degenerate triple.
struct CITriple {
    VertexSet A, B, C;

    CITriple(VertexSet a, VertexSet b, VertexSet c) : A(a), B(b), C(c) {
        if (A.empty() || B.empty())
            throw std::invalid_argument("CITriple: A and B must be nonempty");
        if (A.intersects(B) || A.intersects(C) || B.intersects(C))
            throw std::invalid_argument("CITriple: A, B, C must be pairwise disjoint");
    }

    /// Same statement with A <= B numerically; <A,B|C> and <B,A|C> compare
    /// equal through this form.
    CITriple canonical() const {
        return A <= B ? *this : CITriple(B, A, C);
    }

    VertexSet all() const { return A | B | C; }

    bool operator==(const CITriple& o) const {
        CITriple x = canonical(), y = o.canonical();
        return x.A == y.A && x.B == y.B && x.C == y.C;
    }
    bool operator<(const CITriple& o) const {
        CITriple x = canonical(), y = o.canonical();
        if (x.A != y.A) return x.A < y.A;
        if (x.B != y.B) return x.B < y.B;
        return x.C < y.C;
    }
};

struct CITripleHash {
    std::size_t operator()(const CITriple& t) const {
        CITriple c = t.canonical();
        std::uint64_t h = c.A.bits();
        h = h * 0x9e3779b97f4a7c15ull + c.B.bits();
        h = h * 0x9e3779b97f4a7c15ull + c.C.bits();
        return std::hash<std::uint64_t>()(h);
    }
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const {
        return std::hash<std::uint32_t>()(s.bits());
    }
};

} // namespace magset
