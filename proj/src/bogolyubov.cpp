#include "bourgainlab/bogolyubov.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "bourgainlab/common.hpp"
#include "json.hpp"

namespace bourgainlab {

using json = nlohmann::ordered_json;
using boost::multiprecision::cpp_int;

ContainmentResult bogolyubov_containment(const GroupSet& a) {
    const GroupSpec& g = a.spec();
    require(!a.empty(), "A must be nonempty");
    double alpha = static_cast<double>(a.size()) / static_cast<double>(g.order);

    ContainmentResult out;
    out.threshold = std::sqrt(alpha) / 2.0;
    out.margin = 0.75 * alpha * alpha * alpha * alpha;
    out.spectrum = large_spectrum(indicator(a), out.threshold);

    // Parseval: |spectrum| (sqrt(alpha)/2)^2 alpha^2 <= sum |1^_A|^2 = alpha,
    // so |spectrum| |A|^2 <= 4 |G|^2.
    cpp_int lhs = cpp_int(out.spectrum.size()) * cpp_int(a.size()) * cpp_int(a.size());
    cpp_int rhs = cpp_int(4) * cpp_int(g.order) * cpp_int(g.order);
    ensure(lhs <= rhs, "spectrum larger than the Parseval bound 4 / alpha^2");

    out.system = BourgainSystem::bohr(g, out.spectrum, Rational(1, 4));
    GroupSet level = out.system.realize_unit();

    // b in 2A - 2A iff the quadruple count sum_s r(s) r(s - b) is positive,
    // where r = r_{A+A}.
    std::vector<std::int64_t> r = sum_counts(a, a);
    for (std::int64_t b : level.members()) {
        bool positive = false;
        for (std::int64_t s = 0; s < g.order && !positive; ++s)
            positive = r[s] > 0 && r[g.sub(s, b)] > 0;
        ensure(positive, "Bohr element outside 2A - 2A: " + std::to_string(b));
    }

    // Independent recheck by plain set arithmetic.
    GroupSet s2 = set_arith(a, a, SetOp::sum);
    GroupSet d4 = set_arith(s2, s2, SetOp::difference);
    ensure(is_subset(level, d4), "membership scan disagrees with quadruple counts");
    out.verified = true;
    return out;
}

CorrelationResult correlation_locate(const GroupSet& a, const Rational& k) {
    const GroupSpec& g = a.spec();
    require(!a.empty(), "A must be nonempty");
    require(k == doubling_constant(a), "K must be the doubling constant of A");

    ContainmentResult cont = bogolyubov_containment(a);
    GroupSet m = cont.system.realize_unit();

    // ||1_A * mu_M||_inf = max_x |A cap (x - M)| / |M| by exact counting.
    std::vector<std::int64_t> cnt(g.order, 0);
    std::vector<std::int64_t> mm = m.members();
    a.for_each([&](std::int64_t y) {
        for (std::int64_t t : mm) ++cnt[g.add(y, t)];
    });
    std::int64_t bx = 0;
    for (std::int64_t x = 1; x < g.order; ++x)
        if (cnt[x] > cnt[bx]) bx = x;

    CorrelationResult out{m, bx, Rational(cnt[bx], m.size()), Rational(1) / (Rational(2) * k),
                          false};
    out.meets = out.value >= out.target;
    return out;
}

PluenneckeReport pluennecke_chain_check(const GroupSet& a) {
    require(!a.empty(), "A must be nonempty");
    GroupSet s2 = set_arith(a, a, SetOp::sum);               // 2A
    GroupSet s3 = set_arith(s2, a, SetOp::sum);              // 3A
    GroupSet d1 = set_arith(s3, a, SetOp::difference);       // 3A - A
    GroupSet iter = set_arith(d1, a, SetOp::difference);     // 3A - 2A

    PluenneckeReport out;
    out.sumset_size = s2.size();
    out.iterated_size = iter.size();
    out.doubling = Rational(s2.size(), a.size());

    // |3A - 2A| <= K^5 |A|  <=>  |3A-2A| |A|^4 <= |A+A|^5.
    cpp_int lhs = cpp_int(iter.size());
    cpp_int rhs = 1;
    for (int i = 0; i < 4; ++i) lhs *= a.size();
    for (int i = 0; i < 5; ++i) rhs *= s2.size();
    out.holds = lhs <= rhs;
    ensure(out.holds, "iterated sumset exceeds the K^5 bound");
    return out;
}

HolderYoungReport holder_young_chain(const GroupSet& a, const GroupSet& v, const Measure& mu) {
    const GroupSpec& g = a.spec();
    require(!a.empty(), "A must be nonempty");
    require(v.spec() == g && is_subgroup(v), "V must be a subgroup of the same group");
    require(mu.spec() == g, "measure lives in a different group");

    Measure mu_v = uniform_measure(v);
    Measure mu_aa = uniform_measure(set_arith(a, a, SetOp::sum));
    Measure mu_a = uniform_measure(a);

    DenseFunction part = convolve(indicator(a), mu_v);
    DenseFunction full = convolve(convolve(part, mu_aa), mu);

    HolderYoungReport out;
    out.inner = inner_product(full, mu_a.density).real();
    out.middle = sup_norm(full) * lp_norm(mu_a.density, 1.0);
    out.outer = sup_norm(part);
    out.holds = out.inner <= out.middle + 1e-9 && out.middle <= out.outer + 1e-9;
    ensure(out.holds, "Holder-Young chain violated");
    return out;
}

std::string containment_to_json(const ContainmentResult& r, const GroupSpec& g) {
    json j;
    j["surrogate"] = true;
    j["verified"] = r.verified;
    j["threshold"] = r.threshold;
    j["dimension"] = r.spectrum.size();
    j["spectrum"] = r.spectrum;
    j["margin"] = r.margin;
    j["system"] = json::parse(r.system.to_json());
    (void)g;
    return j.dump();
}

std::string correlation_to_json(const CorrelationResult& r) {
    json j;
    j["surrogate"] = true;
    j["translate"] = r.translate;
    j["value"] = r.value.str();
    j["target"] = r.target.str();
    j["meets"] = r.meets;
    j["structure_size"] = r.structure.size();
    return j.dump();
}

}  // namespace bourgainlab
