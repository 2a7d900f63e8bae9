#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bourgainlab/common.hpp"
#include "bourgainlab/rational.hpp"

namespace bourgainlab {

/**
 * Finite abelian group Z/m_1 x ... x Z/m_k with a stable element enumeration:
 * index = sum_i coord_i * stride_i, little-endian mixed radix (coordinate 0 is
 * least significant). Characters are indexed by the same scheme: the character
 * at index j has coefficient vector coords_of(j) and evaluates to
 * e(sum_i a_i x_i / m_i).
 */
struct GroupSpec {
    std::vector<std::int64_t> moduli;
    std::int64_t order = 1;
    std::vector<std::int64_t> strides;
    std::int64_t exponent = 1;                 // lcm of the moduli
    std::vector<std::int64_t> phase_weights;   // exponent / m_i

    GroupSpec() = default;
    explicit GroupSpec(std::vector<std::int64_t> mods);

    bool operator==(const GroupSpec& o) const { return moduli == o.moduli; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    std::size_t rank() const { return moduli.size(); }

    std::vector<std::int64_t> coords_of(std::int64_t index) const;
    std::int64_t index_of(const std::vector<std::int64_t>& coords) const;

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t neg(std::int64_t a) const;
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }
    // x -> k*x; k may be negative or exceed the moduli.
    std::int64_t scale(std::int64_t k, std::int64_t a) const;

    // Phase numerator t in [0, exponent) of character a at element x:
    // the character value is e(t / exponent).
    std::int64_t phase_numerator(std::int64_t char_index, std::int64_t elt_index) const;

    std::string str() const;
};

GroupSpec parse_group_spec(const std::string& text);  // "Z7", "Z3^4", "Z4xZ8"

std::string element_str(const GroupSpec& g, std::int64_t index);

// Torus distance ||gamma(x)||: distance of the character phase to the nearest
// integer, as an exact rational with denominator g.exponent.
Rational character_torus_norm(const GroupSpec& g, std::int64_t char_index, std::int64_t elt_index);

// |1 - gamma(x)| = 2 sin(pi t / L); float, used only against float tolerances.
double character_gap(const GroupSpec& g, std::int64_t char_index, std::int64_t elt_index);

std::int64_t element_order(const GroupSpec& g, std::int64_t index);

/** Dense subset of a group, bitset over element indices. */
class GroupSet {
  public:
    GroupSet() = default;
    explicit GroupSet(const GroupSpec& g)
        : spec_(g), words_((g.order + 63) / 64, 0), count_(0) {}

    static GroupSet full(const GroupSpec& g);
    static GroupSet singleton(const GroupSpec& g, std::int64_t index);
    static GroupSet from_indices(const GroupSpec& g, const std::vector<std::int64_t>& idx);

    const GroupSpec& spec() const { return spec_; }
    std::int64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(std::int64_t index) const {
        return (words_[index >> 6] >> (index & 63)) & 1;
    }
    void insert(std::int64_t index) {
        std::uint64_t& w = words_[index >> 6];
        std::uint64_t bit = std::uint64_t(1) << (index & 63);
        if (!(w & bit)) { w |= bit; ++count_; }
    }
    void erase(std::int64_t index) {
        std::uint64_t& w = words_[index >> 6];
        std::uint64_t bit = std::uint64_t(1) << (index & 63);
        if (w & bit) { w &= ~bit; --count_; }
    }

    std::vector<std::int64_t> members() const;
    void for_each(const std::function<void(std::int64_t)>& fn) const;

    bool operator==(const GroupSet& o) const {
        return spec_ == o.spec_ && words_ == o.words_;
    }

  private:
    GroupSpec spec_;
    std::vector<std::uint64_t> words_;
    std::int64_t count_ = 0;

    friend GroupSet set_intersect(const GroupSet&, const GroupSet&);
    friend GroupSet set_union(const GroupSet&, const GroupSet&);
    friend GroupSet set_minus(const GroupSet&, const GroupSet&);
    friend bool is_subset(const GroupSet&, const GroupSet&);
};

enum class SetOp { sum, difference };

// A+B / A-B by translate accumulation. Exact; cost O(|A||B|) index ops.
GroupSet set_arith(const GroupSet& a, const GroupSet& b, SetOp op);
GroupSet translate_set(const GroupSet& a, std::int64_t x);
GroupSet negate_set(const GroupSet& a);
GroupSet dilate_set(std::int64_t k, const GroupSet& a);  // {k*a}
GroupSet set_intersect(const GroupSet& a, const GroupSet& b);
GroupSet set_union(const GroupSet& a, const GroupSet& b);
GroupSet set_minus(const GroupSet& a, const GroupSet& b);
bool is_subset(const GroupSet& a, const GroupSet& b);

// Smallest subgroup containing the given elements (iterated closure).
GroupSet subgroup_generated(const GroupSpec& g, const std::vector<std::int64_t>& gens);
bool is_subgroup(const GroupSet& h);

// Greedy maximal disjoint translate family: returns X with S subset of X+B-B
// and |X| <= |S+B|/|B|. B must be nonempty.
GroupSet ruzsa_cover(const GroupSet& s, const GroupSet& b);

Rational doubling_constant(const GroupSet& a);  // |A+A|/|A|, exact

}  // namespace bourgainlab
