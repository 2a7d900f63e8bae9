#include "bourgainlab/group.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace bourgainlab {

GroupSpec::GroupSpec(std::vector<std::int64_t> mods) : moduli(std::move(mods)) {
    require(!moduli.empty(), "group must have at least one factor");
    order = 1;
    strides.resize(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        require(moduli[i] >= 1, "group modulus must be >= 1");
        strides[i] = order;
        order *= moduli[i];
        require(order <= (std::int64_t(1) << 40), "group order too large");
    }
    exponent = 1;
    for (auto m : moduli) exponent = std::lcm(exponent, m);
    phase_weights.resize(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) phase_weights[i] = exponent / moduli[i];
}

std::vector<std::int64_t> GroupSpec::coords_of(std::int64_t index) const {
    std::vector<std::int64_t> c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        c[i] = index % moduli[i];
        index /= moduli[i];
    }
    return c;
}

std::int64_t GroupSpec::index_of(const std::vector<std::int64_t>& coords) const {
    require(coords.size() == moduli.size(), "coordinate rank mismatch");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t c = coords[i] % moduli[i];
        if (c < 0) c += moduli[i];
        idx += c * strides[i];
    }
    return idx;
}

std::int64_t GroupSpec::add(std::int64_t a, std::int64_t b) const {
    if (moduli.size() == 1) {
        std::int64_t s = a + b;
        return s >= order ? s - order : s;
    }
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t m = moduli[i];
        std::int64_t s = a % m + b % m;
        if (s >= m) s -= m;
        idx += s * strides[i];
        a /= m;
        b /= m;
    }
    return idx;
}

std::int64_t GroupSpec::neg(std::int64_t a) const {
    if (moduli.size() == 1) return a == 0 ? 0 : order - a;
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t m = moduli[i];
        std::int64_t c = a % m;
        if (c != 0) c = m - c;
        idx += c * strides[i];
        a /= m;
    }
    return idx;
}

std::int64_t GroupSpec::scale(std::int64_t k, std::int64_t a) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t m = moduli[i];
        std::int64_t kr = k % m;
        if (kr < 0) kr += m;
        idx += ((a % m) * kr % m) * strides[i];
        a /= m;
    }
    return idx;
}

std::int64_t GroupSpec::phase_numerator(std::int64_t char_index, std::int64_t elt_index) const {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t m = moduli[i];
        std::int64_t ai = char_index % m;
        std::int64_t xi = elt_index % m;
        t += (ai * xi % m) * phase_weights[i];
        t %= exponent;
        char_index /= m;
        elt_index /= m;
    }
    return t;
}

std::string GroupSpec::str() const {
    std::ostringstream out;
    std::size_t i = 0;
    bool first = true;
    while (i < moduli.size()) {
        std::size_t j = i;
        while (j < moduli.size() && moduli[j] == moduli[i]) ++j;
        if (!first) out << "x";
        out << "Z" << moduli[i];
        if (j - i > 1) out << "^" << (j - i);
        first = false;
        i = j;
    }
    return out.str();
}

GroupSpec parse_group_spec(const std::string& text) {
    std::vector<std::int64_t> mods;
    std::size_t i = 0;
    while (i < text.size()) {
        require(text[i] == 'Z' || text[i] == 'z', "group spec must look like Z7, Z3^4, Z4xZ8");
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        require(j > i, "missing modulus in group spec");
        std::int64_t m = std::stoll(text.substr(i, j - i));
        std::int64_t reps = 1;
        i = j;
        if (i < text.size() && text[i] == '^') {
            ++i;
            j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            require(j > i, "missing exponent in group spec");
            reps = std::stoll(text.substr(i, j - i));
            i = j;
        }
        for (std::int64_t r = 0; r < reps; ++r) mods.push_back(m);
        if (i < text.size()) {
            require(text[i] == 'x' || text[i] == 'X' || text[i] == '*',
                    "factors must be separated by 'x'");
            ++i;
            require(i < text.size(), "trailing separator in group spec");
        }
    }
    require(!mods.empty(), "empty group spec");
    return GroupSpec(std::move(mods));
}

std::string element_str(const GroupSpec& g, std::int64_t index) {
    auto c = g.coords_of(index);
    if (c.size() == 1) return std::to_string(c[0]);
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out << ",";
        out << c[i];
    }
    out << ")";
    return out.str();
}

Rational character_torus_norm(const GroupSpec& g, std::int64_t char_index,
                              std::int64_t elt_index) {
    std::int64_t t = g.phase_numerator(char_index, elt_index);
    return Rational(std::min(t, g.exponent - t), g.exponent);
}

double character_gap(const GroupSpec& g, std::int64_t char_index, std::int64_t elt_index) {
    std::int64_t t = g.phase_numerator(char_index, elt_index);
    return 2.0 * std::sin(std::numbers::pi * static_cast<double>(t) /
                          static_cast<double>(g.exponent));
}

std::int64_t element_order(const GroupSpec& g, std::int64_t index) {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < g.moduli.size(); ++i) {
        std::int64_t m = g.moduli[i];
        std::int64_t c = index % m;
        index /= m;
        ord = std::lcm(ord, m / std::gcd(m, c == 0 ? m : c));
    }
    return ord;
}

GroupSet GroupSet::full(const GroupSpec& g) {
    GroupSet s(g);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t(0);
    std::int64_t tail = g.order & 63;
    if (tail) s.words_.back() = (std::uint64_t(1) << tail) - 1;
    s.count_ = g.order;
    return s;
}

GroupSet GroupSet::singleton(const GroupSpec& g, std::int64_t index) {
    GroupSet s(g);
    s.insert(index);
    return s;
}

GroupSet GroupSet::from_indices(const GroupSpec& g, const std::vector<std::int64_t>& idx) {
    GroupSet s(g);
    for (auto i : idx) {
        require(i >= 0 && i < g.order, "element index out of range");
        s.insert(i);
    }
    return s;
}

std::vector<std::int64_t> GroupSet::members() const {
    std::vector<std::int64_t> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back(std::int64_t(w) * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

void GroupSet::for_each(const std::function<void(std::int64_t)>& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            fn(std::int64_t(w) * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
}

GroupSet set_arith(const GroupSet& a, const GroupSet& b, SetOp op) {
    require(a.spec() == b.spec(), "set_arith: group mismatch");
    const GroupSpec& g = a.spec();
    GroupSet out(g);
    auto bm = b.members();
    if (op == SetOp::difference) {
        for (auto& x : bm) x = g.neg(x);
    }
    a.for_each([&](std::int64_t x) {
        for (auto y : bm) out.insert(g.add(x, y));
    });
    return out;
}

GroupSet translate_set(const GroupSet& a, std::int64_t x) {
    GroupSet out(a.spec());
    a.for_each([&](std::int64_t e) { out.insert(a.spec().add(e, x)); });
    return out;
}

GroupSet negate_set(const GroupSet& a) {
    GroupSet out(a.spec());
    a.for_each([&](std::int64_t e) { out.insert(a.spec().neg(e)); });
    return out;
}

GroupSet dilate_set(std::int64_t k, const GroupSet& a) {
    GroupSet out(a.spec());
    a.for_each([&](std::int64_t e) { out.insert(a.spec().scale(k, e)); });
    return out;
}

GroupSet set_intersect(const GroupSet& a, const GroupSet& b) {
    require(a.spec() == b.spec(), "set_intersect: group mismatch");
    GroupSet out(a.spec());
    std::int64_t n = 0;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = a.words_[w] & b.words_[w];
        n += std::popcount(out.words_[w]);
    }
    out.count_ = n;
    return out;
}

GroupSet set_union(const GroupSet& a, const GroupSet& b) {
    require(a.spec() == b.spec(), "set_union: group mismatch");
    GroupSet out(a.spec());
    std::int64_t n = 0;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = a.words_[w] | b.words_[w];
        n += std::popcount(out.words_[w]);
    }
    out.count_ = n;
    return out;
}

GroupSet set_minus(const GroupSet& a, const GroupSet& b) {
    require(a.spec() == b.spec(), "set_minus: group mismatch");
    GroupSet out(a.spec());
    std::int64_t n = 0;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = a.words_[w] & ~b.words_[w];
        n += std::popcount(out.words_[w]);
    }
    out.count_ = n;
    return out;
}

bool is_subset(const GroupSet& a, const GroupSet& b) {
    require(a.spec() == b.spec(), "is_subset: group mismatch");
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        if (a.words_[w] & ~b.words_[w]) return false;
    }
    return true;
}

GroupSet subgroup_generated(const GroupSpec& g, const std::vector<std::int64_t>& gens) {
    GroupSet h = GroupSet::singleton(g, 0);
    for (auto gen : gens) {
        require(gen >= 0 && gen < g.order, "generator index out of range");
        // Extend by the cyclic group of gen: H := H + <gen>.
        GroupSet acc = h;
        std::int64_t cur = gen;
        while (cur != 0) {
            acc = set_union(acc, translate_set(h, cur));
            cur = g.add(cur, gen);
        }
        h = acc;
    }
    return h;
}

bool is_subgroup(const GroupSet& h) {
    if (!h.contains(0)) return false;
    const GroupSpec& g = h.spec();
    auto m = h.members();
    for (auto x : m) {
        if (!h.contains(g.neg(x))) return false;
        for (auto y : m) {
            if (!h.contains(g.add(x, y))) return false;
        }
    }
    return true;
}

GroupSet ruzsa_cover(const GroupSet& s, const GroupSet& b) {
    require(s.spec() == b.spec(), "ruzsa_cover: group mismatch");
    require(!b.empty(), "ruzsa_cover: empty covering set");
    const GroupSpec& g = s.spec();
    GroupSet x(g);
    GroupSet covered(g);  // X + B
    auto bm = b.members();
    s.for_each([&](std::int64_t e) {
        bool disjoint = true;
        for (auto y : bm) {
            if (covered.contains(g.add(e, y))) { disjoint = false; break; }
        }
        if (disjoint) {
            x.insert(e);
            for (auto y : bm) covered.insert(g.add(e, y));
        }
    });
    return x;
}

Rational doubling_constant(const GroupSet& a) {
    require(!a.empty(), "doubling_constant: empty set");
    GroupSet aa = set_arith(a, a, SetOp::sum);
    return Rational(aa.size(), a.size());
}

}  // namespace bourgainlab
