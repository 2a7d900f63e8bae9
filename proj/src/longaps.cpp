#include "bourgainlab/longaps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "bourgainlab/common.hpp"
#include "bourgainlab/spectrum.hpp"
#include "json.hpp"

namespace bourgainlab {

using json = nlohmann::ordered_json;
using boost::multiprecision::cpp_int;
using detail::i128;

namespace {

std::uint64_t bits_of(std::int64_t v) {
    return std::bit_width(static_cast<std::uint64_t>(std::max<std::int64_t>(v, 1)));
}

cpp_int ipow(cpp_int base, std::int64_t e) {
    cpp_int r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= base;
    return r;
}

// c[y] = |S| (1_A * mu_S)(y), the integer convolution counts.
std::vector<std::int64_t> conv_counts(const GroupSet& a, const GroupSet& s) {
    return sum_counts(a, s);
}

// ||f - tau_x f||_p <= 1/2 ||f||_p for f with integer values c (common scale
// cancels):  sum_y |c_y - c_{y-x}|^p 2^p <= sum_y c_y^p, p even.
bool half_period_exact(const GroupSpec& g, const std::vector<std::int64_t>& c, std::int64_t x,
                       std::int64_t p) {
    std::int64_t maxc = 1;
    for (std::int64_t v : c) maxc = std::max(maxc, v);
    bool narrow = p * bits_of(maxc) + static_cast<std::uint64_t>(p) + bits_of(g.order) <= 120;
    if (narrow) {
        i128 lhs = 0, rhs = 0;
        for (std::int64_t y = 0; y < g.order; ++y) {
            i128 d = c[y] - c[g.sub(y, x)];
            if (d < 0) d = -d;
            i128 dp = 1, cp = 1;
            for (std::int64_t i = 0; i < p; ++i) {
                dp *= d;
                cp *= c[y];
            }
            lhs += dp;
            rhs += cp;
        }
        for (std::int64_t i = 0; i < p; ++i) lhs *= 2;
        return lhs <= rhs;
    }
    cpp_int lhs = 0, rhs = 0;
    for (std::int64_t y = 0; y < g.order; ++y) {
        cpp_int d = c[y] - c[g.sub(y, x)];
        if (d < 0) d = -d;
        cpp_int dp = 1, cp = 1;
        for (std::int64_t i = 0; i < p; ++i) {
            dp *= d;
            cp *= c[y];
        }
        lhs += dp;
        rhs += cp;
    }
    lhs <<= static_cast<unsigned>(p);
    return lhs <= rhs;
}

bool all_half_periods(const GroupSpec& g, const std::vector<std::int64_t>& c, const GroupSet& set,
                      std::int64_t p, std::int64_t* failed = nullptr) {
    for (std::int64_t x : set.members()) {
        if (!half_period_exact(g, c, x, p)) {
            if (failed) *failed = x;
            return false;
        }
    }
    return true;
}

// out[y] = sum_{x in pts} in[y -+ x].
template <typename T>
std::vector<T> fold(const GroupSpec& g, const std::vector<T>& in,
                    const std::vector<std::int64_t>& pts, bool negate) {
    std::vector<T> out(g.order, T(0));
    for (std::int64_t x : pts) {
        std::int64_t t = negate ? g.neg(x) : x;
        for (std::int64_t y = 0; y < g.order; ++y) out[y] += in[g.sub(y, t)];
    }
    return out;
}

// ||f - f * lambda_X^{(ell)}||_p for f = c / |S|, lambda_X = mu_X * mu_{-X}.
// Integer folds when they fit a 128-bit word, else long double folds.
double smoothing_error(const GroupSpec& g, const std::vector<std::int64_t>& c, std::int64_t ssize,
                       const GroupSet& x, std::int64_t ell, std::int64_t p) {
    std::vector<std::int64_t> xm = x.members();
    std::int64_t maxc = 1;
    for (std::int64_t v : c) maxc = std::max(maxc, v);
    std::uint64_t word = bits_of(maxc) + 2 * static_cast<std::uint64_t>(ell) * bits_of(x.size());
    long double scale = 1.0L;
    for (std::int64_t i = 0; i < 2 * ell; ++i) scale *= static_cast<long double>(x.size());

    long double acc = 0.0L;
    if (word <= 120) {
        std::vector<i128> v(c.begin(), c.end());
        for (std::int64_t i = 0; i < ell; ++i) v = fold(g, v, xm, false);
        for (std::int64_t i = 0; i < ell; ++i) v = fold(g, v, xm, true);
        for (std::int64_t y = 0; y < g.order; ++y) {
            i128 d = c[y];
            for (std::int64_t i = 0; i < 2 * ell; ++i) d *= x.size();
            d -= v[y];
            if (d < 0) d = -d;
            acc += std::pow(static_cast<long double>(d), static_cast<long double>(p));
        }
    } else {
        std::vector<long double> v(c.begin(), c.end());
        for (std::int64_t i = 0; i < ell; ++i) v = fold(g, v, xm, false);
        for (std::int64_t i = 0; i < ell; ++i) v = fold(g, v, xm, true);
        for (std::int64_t y = 0; y < g.order; ++y) {
            long double d = std::abs(static_cast<long double>(c[y]) * scale - v[y]);
            acc += std::pow(d, static_cast<long double>(p));
        }
    }
    long double norm = std::pow(acc / static_cast<long double>(g.order),
                                1.0L / static_cast<long double>(p));
    return static_cast<double>(norm / (scale * static_cast<long double>(ssize)));
}

// Minimal generating list for a subgroup, in enumeration order.
std::vector<std::int64_t> reduce_generators(const GroupSpec& g, const GroupSet& h) {
    std::vector<std::int64_t> gens;
    GroupSet closure(g);
    closure.insert(0);
    for (std::int64_t x : h.members()) {
        if (closure.size() == h.size()) break;
        if (closure.contains(x)) continue;
        gens.push_back(x);
        closure = subgroup_generated(g, gens);
    }
    ensure(closure.size() == h.size(), "generator reduction lost elements");
    return gens;
}

}  // namespace

LpChainReport lp_chain_check(const GroupSet& a, std::int64_t p) {
    const GroupSpec& g = a.spec();
    require(!a.empty(), "A must be nonempty");
    require(p >= 2 && p % 2 == 0, "p must be an even integer >= 2");

    LpChainReport out;
    out.p = p;
    out.doubling = doubling_constant(a);
    double kv = out.doubling.value();
    GroupSet s2 = set_arith(a, a, SetOp::sum);
    DenseFunction f = convolve(indicator(a), uniform_measure(a));

    out.lhs = std::pow(static_cast<double>(s2.size()) / static_cast<double>(g.order),
                       1.0 / static_cast<double>(p));
    out.mid = std::sqrt(kv) * std::sqrt(lp_norm(f, static_cast<double>(p) / 2.0));
    out.rhs = kv * lp_norm(f, static_cast<double>(p));
    out.holds = out.lhs <= out.mid + 1e-12 && out.mid <= out.rhs + 1e-12;
    ensure(out.holds, "Lp chain inequality violated");
    return out;
}

SmoothingWitness croot_sisask_search(const GroupSet& a, const GroupSet& s, const GroupSet& t,
                                     std::int64_t p, std::int64_t ell, double theta,
                                     const Tunables& tun) {
    const GroupSpec& g = a.spec();
    require(s.spec() == g && t.spec() == g, "sets live in different groups");
    require(!a.empty() && !s.empty() && !t.empty(), "sets must be nonempty");
    require(p >= 2 && p % 2 == 0, "p must be an even integer >= 2");
    require(ell >= 1, "ell must be positive");

    GroupSet as = set_arith(a, s, SetOp::sum);
    GroupSet st = set_arith(s, t, SetOp::sum);
    Rational k_as(as.size(), a.size());
    Rational l_st(st.size(), s.size());
    require(theta > 0.0 && theta * theta * k_as.value() <= 1.0 + 1e-12,
            "theta must lie in (0, K^{-1/2}]");

    std::vector<std::int64_t> c = conv_counts(a, s);
    DenseFunction f(g);
    for (std::int64_t y = 0; y < g.order; ++y)
        f.values[y] = static_cast<double>(c[y]) / static_cast<double>(s.size());
    double nhalf = std::sqrt(lp_norm(f, static_cast<double>(p) / 2.0));
    double bound = theta * nhalf;

    std::vector<std::int64_t> tm = t.members();
    double best = std::numeric_limits<double>::infinity();
    double lexp = -static_cast<double>(p * ell * ell) / (theta * theta);
    double size_target = std::pow(2.0 * l_st.value(), lexp) * static_cast<double>(t.size());

    for (int round = 0; round < tun.cs_rounds; ++round) {
        std::int64_t k = std::min<std::int64_t>(std::int64_t(2) << round, 4 * g.order);
        DetRng rng(mix_seed(tun.seed, 1000 + static_cast<std::uint64_t>(round)));
        std::vector<std::int64_t> samples(k);
        for (auto& y : samples) y = static_cast<std::int64_t>(rng.below(g.order));
        std::int64_t qstep = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(bound * static_cast<double>(s.size()) /
                                         (4.0 * static_cast<double>(ell))));

        std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> fibers;
        for (std::int64_t tt : tm) {
            std::vector<std::int64_t> fp(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i)
                fp[i] = c[g.sub(samples[i], tt)] / qstep;
            fibers[fp].push_back(tt);
        }
        const std::vector<std::int64_t>* biggest = nullptr;
        for (const auto& [fp, members] : fibers) {
            if (!biggest || members.size() > biggest->size()) biggest = &members;
        }
        if (biggest->size() == 1 && t.size() >= 2) continue;

        GroupSet x(g);
        for (std::int64_t e : *biggest) x.insert(e);
        double err = smoothing_error(g, c, s.size(), x, ell, p);
        best = std::min(best, err);
        if (err <= bound * (1.0 + 1e-9) + 1e-15) {
            SmoothingWitness w;
            w.x = x;
            w.ell = ell;
            w.p = p;
            w.theta = theta;
            w.achieved = err;
            w.bound = bound;
            w.density = Rational(x.size(), t.size());
            w.size_target = size_target;
            w.rounds = round + 1;
            return w;
        }
    }
    throw search_error("translate smoothing search exhausted its rounds", best);
}

AlmostPeriodResult almost_period_system(const GroupSet& a, const BourgainSystem& b,
                                        std::int64_t p, const Tunables& tun) {
    const GroupSpec& g = a.spec();
    require(b.valid() && b.spec() == g, "system lives in a different group");
    require(!a.empty(), "A must be nonempty");
    require(p >= 2 && p % 2 == 0, "p must be an even integer >= 2");

    GroupSet s2 = set_arith(a, a, SetOp::sum);
    GroupSet d4 = set_arith(s2, s2, SetOp::difference);
    GroupSet b1 = b.realize_unit();
    require(is_subset(b1, d4), "containment system must sit inside 2A - 2A");

    Rational k = doubling_constant(a);
    double kv = k.value();
    double theta = 1.0 / (8.0 * std::sqrt(kv));
    Rational nu = Rational(1) / (Rational(16) * k);
    std::int64_t ell =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::ceil(std::log2(std::max(kv, 2.0))))) +
        1;
    PluenneckeReport plu = pluennecke_chain_check(a);

    std::vector<std::int64_t> c = conv_counts(a, a);
    json trace;
    trace["theta"] = theta;
    trace["nu"] = nu.str();
    trace["ell"] = ell;
    trace["pluennecke_iterated"] = plu.iterated_size;

    AlmostPeriodResult out;
    try {
        out.witness = croot_sisask_search(a, a, b1, p, ell, theta, tun);
    } catch (const search_error& e) {
        // The annihilator route loses its seed set, but the growth route
        // verifies periods exactly and needs no witness.
        out.witness.p = p;
        out.witness.ell = ell;
        out.witness.theta = theta;
        out.witness.achieved = e.best_achieved;
        trace["cs"] = "exhausted";
    }
    trace["cs_error"] = out.witness.achieved;

    // Annihilator route: periods from the local spectrum of mu_X.
    BourgainSystem ann_sys;
    int shrinks = 0;
    try {
        require(!out.witness.x.empty(), "no smoothing witness");
        AnnihilatorResult ann = build_annihilator(b, out.witness.x, 0.5, nu.value(), tun);
        ann_sys = ann.annihilator;
        for (; shrinks <= tun.ap_shrink_steps; ++shrinks) {
            if (all_half_periods(g, c, ann_sys.realize_unit(), p)) break;
            ann_sys = dilate_system(ann_sys, Rational(1, 2));
        }
        if (shrinks > tun.ap_shrink_steps) {
            ann_sys = BourgainSystem();
            trace["annihilator"] = "shrink budget exhausted";
        } else {
            trace["annihilator"] = "verified";
            trace["annihilator_size"] = ann_sys.realize_unit().size();
        }
    } catch (const std::exception& e) {
        trace["annihilator"] = std::string("failed: ") + e.what();
    }

    // Growth route: largest dilate of the containment system whose whole
    // level-1 set verifies.  Descend to a passing radius, then bisect up.
    Rational lo(0), hi(1);
    bool have_lo = false;
    Rational probe(1);
    for (int i = 0; i <= 20; ++i) {
        if (all_half_periods(g, c, b.realize(probe), p)) {
            lo = probe;
            have_lo = true;
            break;
        }
        hi = probe;
        probe = probe / Rational(2);
    }
    if (have_lo && lo < hi) {
        for (int i = 0; i < 6; ++i) {
            Rational mid = (lo + hi) / Rational(2);
            if (all_half_periods(g, c, b.realize(mid), p))
                lo = mid;
            else
                hi = mid;
        }
    }

    BourgainSystem grown;
    if (have_lo) grown = dilate_system(b, lo);
    out.growth_lambda = have_lo ? lo : Rational(0);
    trace["growth_lambda"] = out.growth_lambda.str();

    std::int64_t ann_size = ann_sys.valid() ? ann_sys.realize_unit().size() : 0;
    std::int64_t grown_size = grown.valid() ? grown.realize_unit().size() : 0;
    if (ann_size == 0 && grown_size == 0)
        throw search_error("no verified almost-period system at any scale", 0.0);
    if (grown_size >= ann_size) {
        out.system = grown;
        trace["route"] = "growth";
    } else {
        out.system = ann_sys;
        trace["route"] = "annihilator";
    }
    out.shrinks = shrinks;
    out.period_count = out.system.realize_unit().size();
    out.verified = true;
    trace["period_count"] = out.period_count;
    out.trace = trace.dump();
    return out;
}

std::int64_t packing_translate(const DenseFunction& f, const GroupSet& t, std::int64_t p) {
    const GroupSpec& g = f.spec;
    require(t.spec() == g, "T lives in a different group");
    require(p >= 2 && p % 2 == 0 && p < 62, "p must be an even integer in [2, 62)");
    require(!t.empty(), "T must be nonempty");
    require(t.size() < (std::int64_t(1) << p), "packing needs |T| < 2^p");

    double nf = lp_norm(f, static_cast<double>(p));
    for (std::int64_t tt : t.members()) {
        DenseFunction shifted = translate(f, tt);
        DenseFunction diff(g);
        for (std::int64_t y = 0; y < g.order; ++y)
            diff.values[y] = f.values[y] - shifted.values[y];
        require(lp_norm(diff, static_cast<double>(p)) <= 0.5 * nf + 1e-12,
                "an element of T moves f by more than half its norm");
    }

    GroupSet supp = support(f);
    for (std::int64_t x = 0; x < g.order; ++x) {
        bool ok = true;
        for (std::int64_t tt : t.members()) {
            if (!supp.contains(g.add(x, tt))) {
                ok = false;
                break;
            }
        }
        if (ok) return x;
    }
    throw critical_error("no packing translate despite verified premises");
}

ExtractionResult extract_ap_or_subgroup(const BourgainSystem& b, std::int64_t h) {
    require(b.valid(), "system required");
    const GroupSpec& g = b.spec();
    std::int64_t d = std::max<std::int64_t>(probe_effective_dimension(b), 1);
    require(h >= d, "h below the effective dimension");
    GroupSet b1 = b.realize_unit();
    require(ipow(cpp_int(2), 6 * h) <= cpp_int(b1.size()), "level set smaller than 2^(6h)");

    ExtractionResult out;
    out.h = h;
    out.eta = 2.0 * std::pow(static_cast<double>(b1.size()),
                             -1.0 / (2.0 * static_cast<double>(h)));
    out.n = static_cast<std::int64_t>(std::floor(1.0 / std::sqrt(out.eta)));
    ensure(out.n >= 2, "progression target length below 2");

    GroupSet beta = b.realize(rational_from_double(out.eta));
    ensure(cpp_int(beta.size()) * cpp_int(beta.size()) >= cpp_int(b1.size()),
           "eta level set below the square-root floor");

    StructureCertificate cert;
    cert.group = g.str();
    std::int64_t step = -1;
    for (std::int64_t x : beta.members()) {
        if (x != 0 && element_order(g, x) >= out.n) {
            step = x;
            break;
        }
    }
    GroupSet tset(g);
    if (step >= 0) {
        cert.kind = StructureCertificate::Kind::proper_ap;
        cert.base = 0;
        cert.step = step;
        cert.length = out.n;
        std::int64_t e = 0;
        tset.insert(0);
        for (std::int64_t i = 1; i < out.n; ++i) {
            e = g.add(e, step);
            ensure(!tset.contains(e), "progression collides before its target length");
            tset.insert(e);
        }
    } else {
        // All orders below N: grow a subgroup past N by greedy closure.
        std::vector<std::int64_t> gens;
        GroupSet closure(g);
        closure.insert(0);
        for (std::int64_t x : beta.members()) {
            if (closure.size() >= out.n) break;
            if (x == 0 || closure.contains(x)) continue;
            gens.push_back(x);
            closure = subgroup_generated(g, gens);
        }
        ensure(closure.size() >= out.n, "generator closure stalled below N");
        cert.kind = StructureCertificate::Kind::subgroup_coset;
        cert.base = 0;
        cert.generators = gens;
        cert.length = closure.size();
        tset = closure;
    }

    ensure(is_subset(tset, b1), "extracted structure leaves the level-1 set");
    out.t_size = tset.size();
    cpp_int bsz(b1.size());
    out.window_ok = ipow(cpp_int(4 * out.t_size), 4 * h) >= bsz &&
                    ipow(cpp_int(out.t_size), 2 * h) <= bsz;
    if (!out.window_ok) throw critical_error("certificate size outside the lemma window");
    out.certificate = cert;
    return out;
}

LongStructureResult find_long_structure(const GroupSet& a, const Tunables& tun) {
    const GroupSpec& g = a.spec();
    require(!a.empty(), "A must be nonempty");

    LongStructureResult out;
    out.doubling = doubling_constant(a);
    double kv = out.doubling.value();
    double kc = std::max(kv, 2.0);
    double la = std::log(static_cast<double>(a.size()));
    double praw = std::sqrt(la / (kc * std::pow(std::log(kc), 3.0)));
    std::int64_t p = 2 * static_cast<std::int64_t>(
                             std::ceil(std::max(2.0, std::ceil(praw)) / 2.0));
    out.p = p;
    out.chain_held =
        static_cast<double>(p) * kc * std::log(static_cast<double>(p) * kc) *
            std::pow(std::log(kc), 3.0) <=
        la;

    GroupSet s2 = set_arith(a, a, SetOp::sum);
    json trace;
    trace["p"] = p;
    trace["doubling"] = out.doubling.str();
    trace["chain_held_c1"] = out.chain_held;
    std::string stage = "coset";

    try {
        // A single coset is certified directly: A + A is again a coset.
        GroupSet diff = set_arith(a, a, SetOp::difference);
        if (is_subgroup(diff) && diff.size() == a.size()) {
            StructureCertificate cert;
            cert.kind = StructureCertificate::Kind::subgroup_coset;
            cert.base = s2.members().front();
            cert.generators = reduce_generators(g, diff);
            cert.length = diff.size();
            cert.group = g.str();
            std::string why;
            ensure(verify_structure(cert, s2, &why), "coset certificate failed: " + why);
            out.certificate = cert;
            out.verified = true;
            out.length = diff.size();
            out.h = 0;
            trace["route"] = "coset";
            out.trace_json = trace.dump();
            return out;
        }

        stage = "containment";
        ContainmentResult cont = bogolyubov_containment(a);
        BourgainSystem best = cont.system;
        std::int64_t best_size = best.realize_unit().size();
        GroupSet d4 = set_arith(s2, s2, SetOp::difference);
        // Escalate the spectrum threshold while the Bohr set keeps verifying:
        // fewer frequencies give a larger verified set.
        for (int j = 1; j <= 48; ++j) {
            double thr = cont.threshold * std::pow(2.0, j);
            std::vector<std::int64_t> gamma = large_spectrum(indicator(a), thr);
            BourgainSystem cand = BourgainSystem::bohr(g, gamma, Rational(1, 4));
            GroupSet lvl = cand.realize_unit();
            if (is_subset(lvl, d4) && lvl.size() > best_size) {
                best = cand;
                best_size = lvl.size();
                trace["containment_escalation"] = j;
            }
            if (gamma.size() <= 1) break;
        }
        trace["containment_size"] = best_size;

        stage = "regularity";
        std::int64_t d0 = std::max<std::int64_t>(probe_effective_dimension(best), 1);
        BourgainSystem breg = regularity_scan(best, d0, tun).regular_system;
        trace["regular_size"] = breg.realize_unit().size();

        stage = "almost_periods";
        AlmostPeriodResult ap = almost_period_system(a, breg, p, tun);
        trace["almost_periods"] = json::parse(ap.trace);
        GroupSet bsap = ap.system.realize_unit();

        stage = "extraction";
        std::int64_t deff = std::max<std::int64_t>(probe_effective_dimension(ap.system), 1);
        std::int64_t hfloor = static_cast<std::int64_t>(std::ceil(
            std::log2(static_cast<double>(std::max<std::int64_t>(bsap.size(), 2)))
            / (2.0 * static_cast<double>(p))));
        std::int64_t h = std::max({deff, std::int64_t(1), hfloor});
        out.h = h;

        std::vector<std::int64_t> c = conv_counts(a, a);
        StructureCertificate cert;
        GroupSet tset(g);
        bool have_formula = false;
        std::string extract_note;
        for (std::int64_t hh = h; hh <= h + 1 && !have_formula; ++hh) {
            try {
                ExtractionResult ex = extract_ap_or_subgroup(ap.system, hh);
                if (ex.t_size < (std::int64_t(1) << std::min<std::int64_t>(p, 62))) {
                    cert = ex.certificate;
                    for (std::int64_t e : cert.elements(g)) tset.insert(e);
                    have_formula = true;
                    out.h = hh;
                    trace["extraction"] = json{{"kind", cert.kind ==
                                                StructureCertificate::Kind::proper_ap
                                                    ? "proper_ap" : "subgroup_coset"},
                                               {"n", ex.n},
                                               {"eta", ex.eta},
                                               {"size", ex.t_size}};
                }
            } catch (const std::exception& e) {
                extract_note = e.what();
            }
        }
        if (!have_formula) trace["extraction"] = "fallback: " + extract_note;

        // Extend a proper progression step as far as exact half-period
        // checks allow; used both to lengthen a formula AP and as the
        // fallback when the window extraction is out of reach.
        if (!have_formula || cert.kind == StructureCertificate::Kind::proper_ap) {
            std::vector<std::int64_t> steps;
            if (have_formula) {
                steps.push_back(cert.step);
            } else {
                for (std::int64_t x : bsap.members()) {
                    if (x != 0) steps.push_back(x);
                    if (steps.size() >= 64) break;
                }
            }
            std::int64_t cap = (std::int64_t(1) << std::min<std::int64_t>(p, 62)) - 1;
            std::int64_t best_len = have_formula ? cert.length : 1;
            std::int64_t best_step = have_formula ? cert.step : -1;
            for (std::int64_t x : steps) {
                GroupSet run(g);
                run.insert(0);
                std::int64_t e = 0, len = 1;
                while (len < cap) {
                    e = g.add(e, x);
                    if (run.contains(e) || !half_period_exact(g, c, e, p)) break;
                    run.insert(e);
                    ++len;
                }
                if (len > best_len) {
                    best_len = len;
                    best_step = x;
                }
            }
            if (best_step < 0) throw search_error("no almost-period step extends", 1.0);
            cert.kind = StructureCertificate::Kind::proper_ap;
            cert.base = 0;
            cert.step = best_step;
            cert.length = best_len;
            cert.generators.clear();
            cert.group = g.str();
            tset = GroupSet(g);
            std::int64_t e = 0;
            tset.insert(0);
            for (std::int64_t i = 1; i < best_len; ++i) {
                e = g.add(e, best_step);
                tset.insert(e);
            }
            trace["extension_length"] = best_len;
        }

        stage = "packing";
        DenseFunction f = convolve(indicator(a), uniform_measure(a));
        std::int64_t x0 = packing_translate(f, tset, p);
        cert.base = g.add(x0, cert.base);
        trace["packing_translate"] = x0;

        stage = "verification";
        std::string why;
        ensure(verify_structure(cert, s2, &why), "final certificate failed: " + why);
        out.certificate = cert;
        out.verified = true;
        out.length = cert.kind == StructureCertificate::Kind::proper_ap
                         ? cert.length
                         : static_cast<std::int64_t>(cert.elements(g).size());
        trace["length"] = out.length;
        out.trace_json = trace.dump();
        return out;
    } catch (const std::exception& e) {
        trace["failed_stage"] = stage;
        throw contract_error(stage + ": " + e.what());
    }
}

}  // namespace bourgainlab
