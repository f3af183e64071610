#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace fusionsim {

// Graphs with at most this many vertices store each adjacency row as a single
// 64-bit mask; larger graphs fall back to sorted id vectors. Rule code only
// touches sets through this interface, so it is agnostic to the choice.
inline constexpr uint32_t kSmallGraphMaxVertices = 64;

class VertexSet {
  public:
    VertexSet() : small_(true), bits_(0) {}
    explicit VertexSet(bool small) : small_(small), bits_(0) {}

    static VertexSet single(uint32_t v, bool small) {
        VertexSet s(small);
        s.insert(v);
        return s;
    }

    bool is_small_mode() const { return small_; }

    bool contains(uint32_t v) const {
        if (small_) {
            return (bits_ >> v) & 1ULL;
        }
        return std::binary_search(elems_.begin(), elems_.end(), v);
    }

    size_t size() const {
        return small_ ? static_cast<size_t>(__builtin_popcountll(bits_)) : elems_.size();
    }

    bool empty() const { return small_ ? bits_ == 0 : elems_.empty(); }

    void insert(uint32_t v) {
        if (small_) {
            assert(v < 64);
            bits_ |= 1ULL << v;
        } else {
            auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
            if (it == elems_.end() || *it != v) {
                elems_.insert(it, v);
            }
        }
    }

    void erase(uint32_t v) {
        if (small_) {
            bits_ &= ~(1ULL << v);
        } else {
            auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
            if (it != elems_.end() && *it == v) {
                elems_.erase(it);
            }
        }
    }

    void toggle(uint32_t v) {
        if (small_) {
            bits_ ^= 1ULL << v;
        } else if (contains(v)) {
            erase(v);
        } else {
            insert(v);
        }
    }

    void clear() {
        bits_ = 0;
        elems_.clear();
    }

    uint32_t min_element() const {
        assert(!empty());
        if (small_) {
            return static_cast<uint32_t>(__builtin_ctzll(bits_));
        }
        return elems_.front();
    }

    std::vector<uint32_t> to_vector() const {
        if (!small_) {
            return elems_;
        }
        std::vector<uint32_t> out;
        out.reserve(size());
        uint64_t b = bits_;
        while (b) {
            out.push_back(static_cast<uint32_t>(__builtin_ctzll(b)));
            b &= b - 1;
        }
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        if (small_) {
            uint64_t b = bits_;
            while (b) {
                f(static_cast<uint32_t>(__builtin_ctzll(b)));
                b &= b - 1;
            }
        } else {
            for (uint32_t v : elems_) {
                f(v);
            }
        }
    }

    // In-place symmetric difference; both operands must share a mode.
    VertexSet& operator^=(const VertexSet& rhs) {
        assert(small_ == rhs.small_);
        if (small_) {
            bits_ ^= rhs.bits_;
            return *this;
        }
        std::vector<uint32_t> out;
        out.reserve(elems_.size() + rhs.elems_.size());
        std::set_symmetric_difference(elems_.begin(), elems_.end(), rhs.elems_.begin(),
                                      rhs.elems_.end(), std::back_inserter(out));
        elems_ = std::move(out);
        return *this;
    }

    friend VertexSet operator^(VertexSet lhs, const VertexSet& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    friend VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
        assert(a.small_ == b.small_);
        VertexSet out(a.small_);
        if (a.small_) {
            out.bits_ = a.bits_ & ~b.bits_;
        } else {
            std::set_difference(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                                b.elems_.end(), std::back_inserter(out.elems_));
        }
        return out;
    }

    friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
        assert(a.small_ == b.small_);
        VertexSet out(a.small_);
        if (a.small_) {
            out.bits_ = a.bits_ & b.bits_;
        } else {
            std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                                  b.elems_.end(), std::back_inserter(out.elems_));
        }
        return out;
    }

    friend VertexSet set_union(const VertexSet& a, const VertexSet& b) {
        assert(a.small_ == b.small_);
        VertexSet out(a.small_);
        if (a.small_) {
            out.bits_ = a.bits_ | b.bits_;
        } else {
            std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                           std::back_inserter(out.elems_));
        }
        return out;
    }

    VertexSet without(uint32_t v) const {
        VertexSet out = *this;
        out.erase(v);
        return out;
    }

    bool operator==(const VertexSet& rhs) const {
        if (small_ != rhs.small_) {
            return to_vector() == rhs.to_vector();
        }
        return small_ ? bits_ == rhs.bits_ : elems_ == rhs.elems_;
    }

  private:
    bool small_;
    uint64_t bits_;
    std::vector<uint32_t> elems_;
};

// Elements appearing in an odd number of the given sets.
inline VertexSet symmetric_difference(const std::vector<VertexSet>& sets) {
    if (sets.empty()) {
        return VertexSet();
    }
    VertexSet acc(sets.front().is_small_mode());
    for (const VertexSet& s : sets) {
        acc ^= s;
    }
    return acc;
}

}  // namespace fusionsim
