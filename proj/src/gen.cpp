#include "bourgainlab/gen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

#include "bourgainlab/common.hpp"

namespace bourgainlab {

namespace {

struct GenSpec {
    std::string name;
    std::vector<std::string> args;
};

GenSpec parse_spec(const std::string& text) {
    GenSpec out;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto open = s.find('(');
    if (open == std::string::npos) {
        out.name = s;
        return out;
    }
    require(!s.empty() && s.back() == ')', "generator spec missing closing parenthesis: " + text);
    out.name = s.substr(0, open);
    std::string body = s.substr(open + 1, s.size() - open - 2);
    std::string cur;
    for (char ch : body) {
        if (ch == ',' || ch == ';') {
            out.args.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty() || !out.args.empty()) out.args.push_back(cur);
    return out;
}

std::int64_t arg_int(const GenSpec& s, std::size_t i) {
    require(i < s.args.size(), s.name + " needs argument " + std::to_string(i + 1));
    try {
        return std::stoll(s.args[i]);
    } catch (...) {
        throw contract_error(s.name + ": bad integer argument '" + s.args[i] + "'");
    }
}

double arg_double(const GenSpec& s, std::size_t i) {
    require(i < s.args.size(), s.name + " needs argument " + std::to_string(i + 1));
    try {
        return std::stod(s.args[i]);
    } catch (...) {
        throw contract_error(s.name + ": bad numeric argument '" + s.args[i] + "'");
    }
}

GroupSet gen_interval(const GroupSpec& g, std::int64_t m) {
    require(m >= 1 && m <= g.order, "interval length out of range");
    GroupSet a(g);
    for (std::int64_t i = 0; i < m; ++i) a.insert(i);
    return a;
}

GroupSet gen_random(const GroupSpec& g, double alpha, std::uint64_t seed) {
    require(alpha > 0.0 && alpha <= 1.0, "density must lie in (0, 1]");
    GroupSet a(g);
    DetRng rng(mix_seed(seed, 0x5e7));
    for (std::int64_t i = 0; i < g.order; ++i)
        if (rng.unit() < alpha) a.insert(i);
    return a;
}

GroupSet gen_union_intervals(const GroupSpec& g, std::int64_t k, std::int64_t m,
                             std::uint64_t seed) {
    require(k >= 1 && m >= 1 && m <= g.order, "interval count and length must be positive");
    GroupSet a(g);
    DetRng rng(mix_seed(seed, 0x1a7));
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t start = static_cast<std::int64_t>(rng.below(g.order));
        for (std::int64_t j = 0; j < m; ++j) a.insert((start + j) % g.order);
    }
    return a;
}

GroupSet gen_coset(const GroupSpec& g, const std::vector<std::int64_t>& gens) {
    GroupSet h = subgroup_generated(g, gens);
    std::int64_t t = 0;
    for (std::int64_t i = 0; i < g.order; ++i) {
        if (!h.contains(i)) {
            t = i;
            break;
        }
    }
    return translate_set(h, t);
}

GroupSet gen_behrend_like(const GroupSpec& g, std::int64_t base) {
    require(base >= 2, "digit base must be at least 2");
    std::int64_t half = (base + 1) / 2;  // digits in [0, half) avoid carries on doubling
    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    for (std::int64_t x = 0; x < g.order; ++x) {
        std::int64_t v = x, sq = 0;
        bool ok = true;
        while (v > 0) {
            std::int64_t d = v % base;
            if (d >= half) {
                ok = false;
                break;
            }
            sq += d * d;
            v /= base;
        }
        if (ok) classes[sq].push_back(x);
    }
    const std::vector<std::int64_t>* best = nullptr;
    for (const auto& [sq, members] : classes)
        if (!best || members.size() > best->size()) best = &members;
    GroupSet a(g);
    for (std::int64_t x : *best) a.insert(x);
    return a;
}

// Local brute progression test so the generator stays inside the core
// library: (x, y, z) with x + z = 2y, not all equal.
bool forms_ap_with(const GroupSpec& g, const GroupSet& cur, std::int64_t e) {
    for (std::int64_t m : cur.members()) {
        if (g.scale(2, m) == g.scale(2, e)) return true;          // (e, m, e)
        if (cur.contains(g.sub(g.scale(2, m), e))) return true;   // (e, m, *)
        if (cur.contains(g.sub(g.scale(2, e), m))) return true;   // (m, e, *)
    }
    return false;
}

std::int64_t count_nontrivial_aps(const GroupSpec& g, const GroupSet& a) {
    std::int64_t n = 0;
    std::vector<std::int64_t> mem = a.members();
    for (std::int64_t x : mem)
        for (std::int64_t y : mem) {
            std::int64_t z = g.sub(g.scale(2, y), x);
            if (a.contains(z) && !(x == y && y == z)) ++n;
        }
    return n;
}

GroupSet gen_greedy_apfree(const GroupSpec& g, std::int64_t cap, std::uint64_t seed) {
    require(cap >= 1, "target size must be positive");
    std::vector<std::int64_t> order(g.order);
    for (std::int64_t i = 0; i < g.order; ++i) order[i] = i;
    DetRng rng(mix_seed(seed, 0xaf3));
    for (std::int64_t i = g.order - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);

    GroupSet a(g);
    for (std::int64_t e : order) {
        if (a.size() >= cap) break;
        if (!forms_ap_with(g, a, e)) a.insert(e);
    }
    ensure(count_nontrivial_aps(g, a) == 0, "greedy set contains a progression");
    return a;
}

}  // namespace

GroupSet gen_set(const GroupSpec& g, const std::string& spec, std::uint64_t seed) {
    GenSpec s = parse_spec(spec);
    if (s.name == "interval") return gen_interval(g, arg_int(s, 0));
    if (s.name == "random") return gen_random(g, arg_double(s, 0), seed);
    if (s.name == "union_intervals")
        return gen_union_intervals(g, arg_int(s, 0), arg_int(s, 1), seed);
    if (s.name == "coset") {
        std::vector<std::int64_t> gens;
        for (std::size_t i = 0; i < s.args.size(); ++i) gens.push_back(arg_int(s, i));
        return gen_coset(g, gens);
    }
    if (s.name == "behrend_like") return gen_behrend_like(g, arg_int(s, 0));
    if (s.name == "greedy_apfree") return gen_greedy_apfree(g, arg_int(s, 0), seed);
    throw contract_error("unknown generator spec: " + spec);
}

}  // namespace bourgainlab
