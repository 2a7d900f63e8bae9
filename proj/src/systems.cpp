#include "bourgainlab/systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "bourgainlab/common.hpp"
#include "bourgainlab/harmonic.hpp"
#include "json.hpp"

namespace bourgainlab {

using boost::multiprecision::cpp_int;
using json = nlohmann::ordered_json;

double ell(double x) {
    require(x > 0.0, "ell needs a positive argument");
    return std::log(std::exp(1.0) / x);
}

std::int64_t Endomorphism::apply(const GroupSpec& g, std::int64_t x) const {
    if (!is_matrix()) return g.scale(scalar, x);
    auto c = g.coords_of(x);
    std::vector<std::int64_t> out(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
        detail::i128 acc = 0;
        for (std::size_t j = 0; j < g.rank(); ++j) acc += detail::i128(matrix[i][j]) * c[j];
        std::int64_t m = g.moduli[i];
        std::int64_t r = static_cast<std::int64_t>(acc % m);
        out[i] = r < 0 ? r + m : r;
    }
    return g.index_of(out);
}

void Endomorphism::validate(const GroupSpec& g) const {
    if (!is_matrix()) return;
    require(matrix.size() == g.rank(), "endomorphism matrix rank mismatch");
    for (std::size_t i = 0; i < g.rank(); ++i) {
        require(matrix[i].size() == g.rank(), "endomorphism matrix is not square");
        for (std::size_t j = 0; j < g.rank(); ++j) {
            detail::i128 v = detail::i128(matrix[i][j]) * g.moduli[j];
            require(v % g.moduli[i] == 0, "matrix entry does not respect the moduli");
        }
    }
}

struct BourgainSystem::Node {
    GroupSpec g;
    Backend kind = Backend::bohr;
    std::int64_t declared = 0;

    std::vector<std::int64_t> freqs;  // bohr
    Rational delta{1};

    std::vector<Rational> lengths;  // cprog
    std::vector<std::int64_t> gens;
    GroupSet sub;

    std::shared_ptr<const Node> child;  // dilate / image
    Rational lambda{1};
    Endomorphism phi;

    std::vector<std::shared_ptr<const Node>> children;  // intersect

    mutable std::mutex mu;
    mutable std::map<Rational, GroupSet> cache;
};

namespace {

using Backend = BourgainSystem::Backend;
using Node = BourgainSystem::Node;
using NodePtr = std::shared_ptr<const Node>;

GroupSet realize_node(const NodePtr& n, const Rational& rho) {
    require(rho > Rational(0), "radius must be positive");
    {
        std::lock_guard<std::mutex> lock(n->mu);
        auto it = n->cache.find(rho);
        if (it != n->cache.end()) return it->second;
    }
    const GroupSpec& g = n->g;
    GroupSet out(g);
    switch (n->kind) {
        case Backend::bohr: {
            Rational r = rho * n->delta;
            for (std::int64_t x = 0; x < g.order; ++x) {
                bool in = true;
                for (std::int64_t a : n->freqs) {
                    if (character_torus_norm(g, a, x) > r) { in = false; break; }
                }
                if (in) out.insert(x);
            }
            break;
        }
        case Backend::cprog: {
            out = n->sub;
            for (std::size_t i = 0; i < n->lengths.size(); ++i) {
                std::int64_t k = rational_floor(rho * n->lengths[i]);
                GroupSet acc = out;
                GroupSet cur = out;
                for (std::int64_t j = 1; j <= k; ++j) {
                    cur = translate_set(cur, n->gens[i]);
                    acc = set_union(acc, cur);
                }
                cur = out;
                std::int64_t neg = g.neg(n->gens[i]);
                for (std::int64_t j = 1; j <= k; ++j) {
                    cur = translate_set(cur, neg);
                    acc = set_union(acc, cur);
                }
                out = acc;
            }
            break;
        }
        case Backend::dilate:
            out = realize_node(n->child, n->lambda * rho);
            break;
        case Backend::intersect: {
            out = realize_node(n->children[0], rho);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                out = set_intersect(out, realize_node(n->children[i], rho));
            break;
        }
        case Backend::image: {
            GroupSet base = realize_node(n->child, rho);
            base.for_each([&](std::int64_t e) { out.insert(n->phi.apply(g, e)); });
            break;
        }
    }
    std::lock_guard<std::mutex> lock(n->mu);
    auto [it, inserted] = n->cache.emplace(rho, std::move(out));
    (void)inserted;
    return it->second;
}

bool fits_budget(std::int64_t count, std::int64_t d) {
    if (d >= 62) return true;
    return count <= (std::int64_t(1) << d);
}

std::int64_t budget_of(std::int64_t count) {
    if (count <= 1) return 0;
    return std::bit_width(static_cast<std::uint64_t>(count - 1));
}

GroupSet witness_node(const NodePtr& n, const Rational& rho);

// Per-axis translates {-(b-a), 0, b-a} * omega_i; three intervals of width
// 2a+1 centered there cover [-b, b] because b <= 2a+1.
GroupSet grid_witness_cprog(const NodePtr& n, const Rational& rho) {
    const GroupSpec& g = n->g;
    std::vector<std::vector<std::int64_t>> choices;
    for (std::size_t i = 0; i < n->lengths.size(); ++i) {
        std::int64_t a = rational_floor(rho * n->lengths[i]);
        std::int64_t b = rational_floor(Rational(2) * rho * n->lengths[i]);
        std::vector<std::int64_t> c{0};
        if (b > a) { c.push_back(b - a); c.push_back(a - b); }
        choices.push_back(std::move(c));
    }
    GroupSet x(g);
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        std::int64_t e = 0;
        for (std::size_t i = 0; i < choices.size(); ++i)
            e = g.add(e, g.scale(choices[i][idx[i]], n->gens[i]));
        x.insert(e);
        std::size_t i = 0;
        for (; i < choices.size(); ++i) {
            if (++idx[i] < choices[i].size()) break;
            idx[i] = 0;
        }
        if (i == choices.size()) break;
    }
    return x;
}

// One representative per label vector. The label of x under child i is the
// first t in X_i(rho) + X_i(rho/2) with x - t in B^i_{rho/2}; two points with
// equal labels differ by an element of each B^i_rho.
GroupSet rep_witness_intersect(const NodePtr& n, const Rational& rho) {
    const GroupSpec& g = n->g;
    GroupSet big = realize_node(n, rho * Rational(2));
    std::vector<std::vector<std::int64_t>> labels;
    std::vector<GroupSet> half;
    for (const auto& c : n->children) {
        GroupSet t = set_arith(witness_node(c, rho), witness_node(c, rho / Rational(2)),
                               SetOp::sum);
        labels.push_back(t.members());
        half.push_back(realize_node(c, rho / Rational(2)));
    }
    std::map<std::vector<std::int64_t>, std::int64_t> seen;
    GroupSet x(g);
    for (std::int64_t e : big.members()) {
        std::vector<std::int64_t> key;
        key.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            std::int64_t found = -1;
            for (std::int64_t t : labels[i]) {
                if (half[i].contains(g.sub(e, t))) { found = t; break; }
            }
            ensure(found >= 0, "intersection covering label missing");
            key.push_back(found);
        }
        if (seen.emplace(std::move(key), e).second) x.insert(e);
    }
    return x;
}

GroupSet witness_node(const NodePtr& n, const Rational& rho) {
    switch (n->kind) {
        case Backend::bohr:
            return ruzsa_cover(realize_node(n, rho * Rational(2)),
                               realize_node(n, rho / Rational(2)));
        case Backend::cprog:
            return grid_witness_cprog(n, rho);
        case Backend::dilate:
            return witness_node(n->child, n->lambda * rho);
        case Backend::intersect:
            return rep_witness_intersect(n, rho);
        case Backend::image: {
            GroupSet base = witness_node(n->child, rho);
            GroupSet out(n->g);
            base.for_each([&](std::int64_t e) { out.insert(n->phi.apply(n->g, e)); });
            return out;
        }
    }
    throw critical_error("unreachable system backend");
}

bool witness_covers(const NodePtr& n, const GroupSet& x, const Rational& rho) {
    GroupSet shifted = set_arith(x, realize_node(n, rho), SetOp::sum);
    return is_subset(realize_node(n, rho * Rational(2)), shifted);
}

cpp_int ipow(cpp_int base, std::int64_t e) {
    cpp_int r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= base;
    return r;
}

NodePtr freeze(std::shared_ptr<Node> n) { return NodePtr(std::move(n)); }

}  // namespace

const GroupSpec& BourgainSystem::spec() const {
    require(node_ != nullptr, "empty system");
    return node_->g;
}

BourgainSystem::Backend BourgainSystem::backend() const {
    require(node_ != nullptr, "empty system");
    return node_->kind;
}

std::int64_t BourgainSystem::declared_dimension() const {
    require(node_ != nullptr, "empty system");
    return declared_override_ >= 0 ? declared_override_ : node_->declared;
}

GroupSet BourgainSystem::realize(const Rational& rho) const {
    require(node_ != nullptr, "empty system");
    return realize_node(node_, rho);
}

BourgainSystem BourgainSystem::with_declared_dimension(std::int64_t d) const {
    require(node_ != nullptr, "empty system");
    require(d >= 0, "dimension must be nonnegative");
    BourgainSystem s = *this;
    s.declared_override_ = d;
    return s;
}

BourgainSystem BourgainSystem::bohr(const GroupSpec& g, std::vector<std::int64_t> freqs,
                                    const Rational& delta) {
    require(delta > Rational(0) && delta <= Rational(1), "bohr width must lie in (0, 1]");
    for (std::int64_t a : freqs) require(a >= 0 && a < g.order, "frequency out of range");
    auto n = std::make_shared<Node>();
    n->g = g;
    n->kind = Backend::bohr;
    n->freqs = std::move(freqs);
    n->delta = delta;
    n->declared = 6 * static_cast<std::int64_t>(n->freqs.size());
    BourgainSystem s(freeze(std::move(n)));
    // |B(Gamma, delta)| >= delta^|Gamma| |G|, compared exactly.
    std::int64_t k = static_cast<std::int64_t>(s.node_->freqs.size());
    cpp_int lhs = cpp_int(s.realize_unit().size()) * ipow(cpp_int(delta.den), k);
    cpp_int rhs = ipow(cpp_int(delta.num), k) * g.order;
    ensure(lhs >= rhs, "bohr set below its density floor");
    return s;
}

BourgainSystem BourgainSystem::coset_progression(const GroupSpec& g,
                                                 std::vector<Rational> lengths,
                                                 std::vector<std::int64_t> generators,
                                                 GroupSet subgroup) {
    require(lengths.size() == generators.size(), "one generator per length");
    for (const Rational& l : lengths) require(l >= Rational(0), "lengths must be nonnegative");
    for (std::int64_t w : generators) require(w >= 0 && w < g.order, "generator out of range");
    require(subgroup.spec() == g, "subgroup lives in a different group");
    require(is_subgroup(subgroup), "cprog base must be a subgroup");
    auto n = std::make_shared<Node>();
    n->g = g;
    n->kind = Backend::cprog;
    n->lengths = std::move(lengths);
    n->gens = std::move(generators);
    n->sub = std::move(subgroup);
    n->declared = 3 * static_cast<std::int64_t>(n->lengths.size());
    return BourgainSystem(freeze(std::move(n)));
}

BourgainSystem BourgainSystem::whole_group(const GroupSpec& g) {
    return bohr(g, {}, Rational(1));
}

BourgainSystem BourgainSystem::subgroup(GroupSet h) {
    GroupSpec g = h.spec();
    return coset_progression(g, {}, {}, std::move(h));
}

BourgainSystem dilate_system(const BourgainSystem& s, const Rational& lambda) {
    require(s.valid(), "empty system");
    require(lambda > Rational(0) && lambda <= Rational(1), "dilation factor must lie in (0, 1]");
    auto n = std::make_shared<Node>();
    n->g = s.spec();
    n->kind = Backend::dilate;
    n->child = s.node_;
    n->lambda = lambda;
    n->declared = s.declared_dimension();
    BourgainSystem out(freeze(std::move(n)));
    out.declared_override_ = s.declared_override_;
    // |B_lambda| >= (lambda/2)^d |B_1|, compared exactly.
    std::int64_t d = out.declared_dimension();
    cpp_int lhs = cpp_int(out.realize_unit().size()) * ipow(cpp_int(2) * lambda.den, d);
    cpp_int rhs = ipow(cpp_int(lambda.num), d) * realize_node(out.node_->child, Rational(1)).size();
    ensure(lhs >= rhs, "dilated system below its density floor");
    return out;
}

BourgainSystem intersect_systems(const std::vector<BourgainSystem>& systems) {
    require(!systems.empty(), "intersection of no systems");
    const GroupSpec& g = systems.front().spec();
    std::int64_t dsum = 0;
    for (const auto& s : systems) {
        require(s.valid(), "empty system");
        require(s.spec() == g, "systems live in different groups");
        dsum += s.declared_dimension();
    }
    auto n = std::make_shared<Node>();
    n->g = g;
    n->kind = Backend::intersect;
    for (const auto& s : systems) n->children.push_back(s.node_);
    n->declared = 2 * dsum;
    BourgainSystem out(freeze(std::move(n)));
    // |cap B_i| * 4^{sum d_i} * |G|^{k-1} >= prod |B_i|, compared exactly.
    cpp_int lhs = cpp_int(out.realize_unit().size()) * ipow(cpp_int(4), dsum) *
                  ipow(cpp_int(g.order), static_cast<std::int64_t>(systems.size()) - 1);
    cpp_int rhs = 1;
    for (const auto& s : systems) rhs *= cpp_int(s.realize_unit().size());
    ensure(lhs >= rhs, "intersection below its density floor");
    for (Rational rho : {Rational(1, 2), Rational(1)}) {
        GroupSet x = covering_witness(out, rho);
        ensure(fits_budget(x.size(), out.declared_dimension()),
               "intersection covering exceeds its budget");
    }
    return out;
}

BourgainSystem image_system(const BourgainSystem& s, const Endomorphism& phi) {
    require(s.valid(), "empty system");
    phi.validate(s.spec());
    auto n = std::make_shared<Node>();
    n->g = s.spec();
    n->kind = Backend::image;
    n->child = s.node_;
    n->phi = phi;
    n->declared = s.declared_dimension();
    BourgainSystem out(freeze(std::move(n)));
    out.declared_override_ = s.declared_override_;
    return out;
}

GroupSet covering_witness(const BourgainSystem& s, const Rational& rho) {
    require(s.valid(), "empty system");
    const NodePtr& n = s.node();
    GroupSet structural;
    bool have = false;
    try {
        structural = witness_node(n, rho);
        have = witness_covers(n, structural, rho);
    } catch (const std::exception&) {
        have = false;
    }
    if (have) return structural;
    GroupSet greedy = ruzsa_cover(realize_node(n, rho * Rational(2)),
                                  realize_node(n, rho / Rational(2)));
    ensure(witness_covers(n, greedy, rho), "no verified covering witness");
    return greedy;
}

std::int64_t probe_effective_dimension(const BourgainSystem& s,
                                       const std::vector<Rational>& radii) {
    require(!radii.empty(), "need at least one probe radius");
    std::int64_t d = 0;
    for (const Rational& rho : radii)
        d = std::max(d, budget_of(covering_witness(s, rho).size()));
    return d;
}

AxiomReport verify_axioms(const BourgainSystem& s, const std::vector<Rational>& radii,
                          std::int64_t budget_d) {
    require(s.valid(), "empty system");
    std::vector<Rational> grid = radii;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    require(!grid.empty() && grid.front() > Rational(0), "radius grid must be positive");

    AxiomReport rep;
    auto flag = [&rep](const std::string& axiom, const Rational& rho, const Rational& rho2,
                       const std::string& detail) {
        rep.violations.push_back({axiom, rho, rho2, detail});
    };

    std::vector<GroupSet> sets;
    sets.reserve(grid.size());
    for (const Rational& rho : grid) sets.push_back(s.realize(rho));

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!sets[i].contains(0)) flag("zero", grid[i], grid[i], "0 not a member");
        if (!(negate_set(sets[i]) == sets[i])) flag("symmetry", grid[i], grid[i], "B != -B");
        if (i + 1 < grid.size() && !is_subset(sets[i], sets[i + 1]))
            flag("nesting", grid[i], grid[i + 1], "smaller radius not contained");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            GroupSet sum = set_arith(sets[i], sets[j], SetOp::sum);
            if (!is_subset(sum, s.realize(grid[i] + grid[j])))
                flag("additive", grid[i], grid[j], "B_r + B_r' not inside B_{r+r'}");
        }
    }
    for (const Rational& rho : grid) {
        try {
            GroupSet x = covering_witness(s, rho);
            if (!fits_budget(x.size(), budget_d))
                flag("covering", rho, rho,
                     "witness size " + std::to_string(x.size()) + " over budget 2^" +
                         std::to_string(budget_d));
        } catch (const critical_error& e) {
            flag("covering", rho, rho, e.what());
        }
    }
    return rep;
}

namespace {

std::pair<int, int> regularity_grid(const BourgainSystem& s, std::int64_t d, int points,
                                    std::int64_t c0 = SystemConstants::C0) {
    require(d >= 1, "regularity needs dimension >= 1");
    require(points >= 3 && points % 2 == 1, "regularity grid must be odd-sized");
    require(c0 >= 1, "regularity slope must be positive");
    int half = (points - 1) / 2;
    std::int64_t base = s.realize_unit().size();
    int pass = 0;
    for (int j = -half; j <= half; ++j) {
        Rational rho(j, std::int64_t(half) * c0 * d);
        if (!(Rational(1) + rho > Rational(0))) { ++pass; continue; }  // level sets need rho > 0
        std::int64_t bj = s.realize(Rational(1) + rho).size();
        Rational slack = Rational(c0 * d) * rational_abs(rho);
        bool ok = Rational(bj) >= (Rational(1) - slack) * Rational(base) &&
                  Rational(bj) <= (Rational(1) + slack) * Rational(base);
        if (ok) ++pass;
    }
    return {pass, points};
}

}  // namespace

bool regularity_check(const BourgainSystem& s, std::int64_t d, int grid_points) {
    auto [pass, total] = regularity_grid(s, d, grid_points);
    return pass == total;
}

bool regularity_check_at(const BourgainSystem& s, std::int64_t d, int grid_points,
                         std::int64_t c0) {
    auto [pass, total] = regularity_grid(s, d, grid_points, c0);
    return pass == total;
}

RegularityResult regularity_scan(const BourgainSystem& s, std::int64_t d, const Tunables& tun) {
    std::int64_t dd = std::max<std::int64_t>(d, 1);
    int points = tun.reg_lambda_points;
    require(points >= 2, "lambda grid too small");
    double best = 0.0;
    for (int k = 0; k < points; ++k) {
        double lv = std::exp2(-double(k) / double(points - 1));
        Rational lambda = rational_from_double(lv, std::int64_t(1) << 16);
        if (lambda > Rational(1)) lambda = Rational(1);
        if (lambda < Rational(1, 2)) lambda = Rational(1, 2);
        BourgainSystem cand = dilate_system(s, lambda);
        auto [pass, total] = regularity_grid(cand, dd, tun.reg_rho_points);
        best = std::max(best, double(pass) / double(total));
        if (pass == total) {
            RegularityResult r;
            r.regular_at_one = (k == 0);
            r.lambda_star = lambda;
            r.regular_system = cand;
            r.grid_checked = total;
            return r;
        }
    }
    throw search_error("no regular dilate on the lambda grid", best);
}

AveragingResult averaging_check(const BourgainSystem& s, const Measure& mu, const Rational& rho,
                                std::int64_t d) {
    require(s.valid(), "empty system");
    require(mu.spec() == s.spec(), "measure lives in a different group");
    GroupSet inner = s.realize(rho);
    GroupSet supp = support(mu.density);
    require(is_subset(supp, inner), "measure not supported in B_rho");

    Measure mb = uniform_measure(s.realize_unit());
    DenseFunction conv = convolve(mb.density, mu);
    long double acc = 0.0L;
    for (std::int64_t x = 0; x < s.spec().order; ++x)
        acc += std::abs(std::complex<long double>(conv.values[x]) -
                        std::complex<long double>(mb.density.values[x]));
    AveragingResult r;
    r.deviation = static_cast<double>(acc / s.spec().order);
    r.bound = SystemConstants::C1 * rho.value() * static_cast<double>(d);
    r.within = r.deviation <= r.bound + 1e-12;
    return r;
}

namespace {

json node_json(const NodePtr& n) {
    json j;
    switch (n->kind) {
        case Backend::bohr: {
            j["backend"] = "bohr";
            j["freqs"] = n->freqs;
            j["delta"] = n->delta.str();
            break;
        }
        case Backend::cprog: {
            j["backend"] = "cprog";
            json ls = json::array();
            for (const Rational& l : n->lengths) ls.push_back(l.str());
            j["lengths"] = ls;
            j["generators"] = n->gens;
            j["subgroup"] = n->sub.members();
            break;
        }
        case Backend::dilate: {
            j["backend"] = "dilate";
            j["lambda"] = n->lambda.str();
            j["child"] = node_json(n->child);
            break;
        }
        case Backend::intersect: {
            j["backend"] = "intersect";
            json cs = json::array();
            for (const auto& c : n->children) cs.push_back(node_json(c));
            j["children"] = cs;
            break;
        }
        case Backend::image: {
            j["backend"] = "image";
            j["scalar"] = n->phi.scalar;
            if (n->phi.is_matrix()) j["matrix"] = n->phi.matrix;
            j["child"] = node_json(n->child);
            break;
        }
    }
    j["dimension"] = n->declared;
    return j;
}

BourgainSystem node_from_json(const GroupSpec& g, const json& j) {
    std::string backend = j.at("backend").get<std::string>();
    BourgainSystem s;
    if (backend == "bohr") {
        s = BourgainSystem::bohr(g, j.at("freqs").get<std::vector<std::int64_t>>(),
                                 parse_rational(j.at("delta").get<std::string>()));
    } else if (backend == "cprog") {
        std::vector<Rational> lengths;
        for (const auto& l : j.at("lengths")) lengths.push_back(parse_rational(l.get<std::string>()));
        s = BourgainSystem::coset_progression(
            g, std::move(lengths), j.at("generators").get<std::vector<std::int64_t>>(),
            GroupSet::from_indices(g, j.at("subgroup").get<std::vector<std::int64_t>>()));
    } else if (backend == "dilate") {
        s = dilate_system(node_from_json(g, j.at("child")),
                          parse_rational(j.at("lambda").get<std::string>()));
    } else if (backend == "intersect") {
        std::vector<BourgainSystem> children;
        for (const auto& c : j.at("children")) children.push_back(node_from_json(g, c));
        s = intersect_systems(children);
    } else if (backend == "image") {
        Endomorphism phi;
        phi.scalar = j.at("scalar").get<std::int64_t>();
        if (j.contains("matrix"))
            phi.matrix = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
        s = image_system(node_from_json(g, j.at("child")), phi);
    } else {
        throw contract_error("unknown system backend: " + backend);
    }
    std::int64_t want = j.at("dimension").get<std::int64_t>();
    if (want != s.declared_dimension()) s = s.with_declared_dimension(want);
    return s;
}

std::string describe_node(const NodePtr& n) {
    std::ostringstream os;
    switch (n->kind) {
        case Backend::bohr:
            os << "bohr(k=" << n->freqs.size() << ",delta=" << n->delta.str() << ")";
            break;
        case Backend::cprog:
            os << "cprog(d=" << n->lengths.size() << ",|H|=" << n->sub.size() << ")";
            break;
        case Backend::dilate:
            os << "dilate(" << n->lambda.str() << "," << describe_node(n->child) << ")";
            break;
        case Backend::intersect: {
            os << "meet(";
            for (std::size_t i = 0; i < n->children.size(); ++i) {
                if (i) os << ",";
                os << describe_node(n->children[i]);
            }
            os << ")";
            break;
        }
        case Backend::image:
            os << "image(" << describe_node(n->child) << ")";
            break;
    }
    return os.str();
}

}  // namespace

std::string BourgainSystem::describe() const {
    require(node_ != nullptr, "empty system");
    std::ostringstream os;
    os << describe_node(node_) << "[d=" << declared_dimension() << "]";
    return os.str();
}

std::string BourgainSystem::to_json() const {
    require(node_ != nullptr, "empty system");
    json j = node_json(node_);
    j["group"] = node_->g.str();
    j["dimension"] = declared_dimension();
    return j.dump();
}

BourgainSystem BourgainSystem::from_json(const GroupSpec& g, const std::string& text) {
    json j = json::parse(text);
    if (j.contains("group"))
        require(parse_group_spec(j.at("group").get<std::string>()) == g,
                "system serialized for a different group");
    return node_from_json(g, j);
}

}  // namespace bourgainlab
