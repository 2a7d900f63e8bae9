#include "bourgainlab/roth.hpp"

#include <algorithm>
#include <cmath>

#include "bourgainlab/common.hpp"
#include "bourgainlab/harmonic.hpp"
#include "bourgainlab/spectrum.hpp"
#include "json.hpp"

namespace bourgainlab {

using json = nlohmann::ordered_json;

ThreeAPCount count_threeaps(const GroupSet& a, CountMode mode) {
    const GroupSpec& g = a.spec();
    ThreeAPCount out;
    out.trivial = a.size();
    if (a.empty()) return out;
    GroupSet two_a = dilate_set(2, a);
    double order2 = static_cast<double>(g.order) * static_cast<double>(g.order);

    if (mode == CountMode::brute) {
        std::vector<std::int64_t> fiber(g.order, 0);  // #{y in A : 2y = s}
        a.for_each([&](std::int64_t y) { ++fiber[g.scale(2, y)]; });
        std::vector<std::int64_t> r = sum_counts(a, a);
        std::int64_t total = 0, hits = 0;
        for (std::int64_t s = 0; s < g.order; ++s) {
            total += r[s] * fiber[s];
            if (two_a.contains(s)) hits += r[s];
        }
        out.total = total;
        out.normalized = static_cast<double>(hits) / order2;
        return out;
    }

    DualFunction fa = fourier(indicator(a));
    DualFunction f2 = fourier(indicator(two_a));
    long double acc = 0.0L;
    for (std::int64_t j = 0; j < g.order; ++j) {
        std::complex<long double> v =
            std::complex<long double>(fa.values[j]) * std::complex<long double>(fa.values[j]) *
            std::conj(std::complex<long double>(f2.values[j]));
        acc += v.real();
    }
    out.normalized = static_cast<double>(acc);
    out.total = std::llround(out.normalized * order2);
    return out;
}

std::optional<ThreeAPCertificate> find_nontrivial_threeap(const GroupSet& a) {
    const GroupSpec& g = a.spec();
    std::vector<std::vector<std::int64_t>> fibers(g.order);  // s -> {y in A : 2y = s}
    a.for_each([&](std::int64_t y) { fibers[g.scale(2, y)].push_back(y); });
    std::vector<std::int64_t> mem = a.members();
    for (std::int64_t x : mem) {
        for (std::int64_t z : mem) {
            for (std::int64_t y : fibers[g.add(x, z)]) {
                if (x == y && y == z) continue;
                return ThreeAPCertificate{x, y, z, g.str()};
            }
        }
    }
    return std::nullopt;
}

std::optional<std::int64_t> order2_scan(const GroupSet& a) {
    const GroupSpec& g = a.spec();
    GroupSet diff = set_arith(a, a, SetOp::difference);
    for (std::int64_t d : diff.members()) {
        if (d != 0 && g.scale(2, d) == 0) return d;
    }
    return std::nullopt;
}

GroupSet restricted_sumset(const GroupSet& a) {
    const GroupSpec& g = a.spec();
    GroupSet out(g);
    std::vector<std::int64_t> mem = a.members();
    for (std::size_t i = 0; i < mem.size(); ++i) {
        for (std::size_t j = i + 1; j < mem.size(); ++j) {
            out.insert(g.add(mem[i], mem[j]));
        }
    }
    return out;
}

EqChainValues eq_chain_identity(const GroupSet& a, std::int64_t x) {
    const GroupSpec& g = a.spec();
    require(x >= 0 && x < g.order, "translate out of range");
    EqChainValues out;
    double order2 = static_cast<double>(g.order) * static_cast<double>(g.order);

    GroupSet two_a = dilate_set(2, a);
    std::vector<std::int64_t> r = sum_counts(a, a);
    for (std::int64_t s = 0; s < g.order; ++s)
        if (two_a.contains(s)) out.lhs_count += r[s];

    GroupSet u = translate_set(a, g.neg(x));                       // A - x
    GroupSet v = translate_set(dilate_set(-2, a), g.scale(2, x));  // 2x - 2A
    GroupSet w = translate_set(negate_set(a), x);                  // x - A
    std::vector<std::int64_t> r2 = sum_counts(u, v);
    for (std::int64_t s = 0; s < g.order; ++s)
        if (w.contains(s)) out.rhs_count += r2[s];

    out.lhs = static_cast<double>(out.lhs_count) / order2;
    out.rhs = static_cast<double>(out.rhs_count) / order2;
    return out;
}

std::optional<IncrementWitness> l2_increment_step(const GroupSet& a,
                                                  const BourgainSystem& system,
                                                  const std::vector<std::int64_t>& delta,
                                                  const GroupSet& t, const Rational& kappa,
                                                  const Rational& rho, const Tunables& tun) {
    const GroupSpec& g = a.spec();
    require(system.valid() && system.spec() == g, "system lives in a different group");
    require(kappa > Rational(0) && kappa <= Rational(1), "kappa must lie in (0, 1]");
    GroupSet b = system.realize_unit();
    require(!a.empty() && is_subset(a, b), "A must be a nonempty subset of B");
    Rational alpha(a.size(), b.size());

    std::int64_t d = std::max<std::int64_t>(probe_effective_dimension(system), 1);
    Rational cap = rational_from_double(tun.c_step) * kappa * alpha / Rational(d);
    require(rho > Rational(0) && rho <= cap, "rho exceeds c_step kappa alpha / d");
    require(!t.empty() && is_subset(t, system.realize(rho)), "T must lie inside B_rho");
    require(annihilation_check(g, delta, t, 0.5).passed, "Delta is not 1/2-annihilated on T");

    DenseFunction f(g);
    double av = alpha.value();
    b.for_each([&](std::int64_t e) { f.values[e] = -av; });
    a.for_each([&](std::int64_t e) { f.values[e] += 1.0; });
    DualFunction fh = fourier(f);
    long double energy = 0.0L;
    for (std::int64_t c : delta) {
        require(c >= 0 && c < g.order, "character out of range");
        energy += std::norm(std::complex<long double>(fh.values[c]));
    }
    Rational bdens(b.size(), g.order);
    double need = kappa.value() * av * av * bdens.value();
    if (static_cast<double>(energy) < need) return std::nullopt;

    // ||1_A * mu_T||_inf by exact counting: |A cap (x - T)| / |T|.
    std::vector<std::int64_t> cnt(g.order, 0);
    std::vector<std::int64_t> tm = t.members();
    a.for_each([&](std::int64_t y) {
        for (std::int64_t tt : tm) ++cnt[g.add(y, tt)];
    });
    std::int64_t bx = 0;
    for (std::int64_t x = 1; x < g.order; ++x)
        if (cnt[x] > cnt[bx]) bx = x;

    IncrementWitness w;
    w.x = bx;
    w.new_density = Rational(cnt[bx], t.size());
    w.threshold = (Rational(1) + kappa / Rational(8)) * alpha;
    w.energy = static_cast<double>(energy);
    ensure(w.new_density >= w.threshold, "increment conclusion below (1 + kappa/8) alpha");
    return w;
}

TwoScaleOutcome two_scale_select(const GroupSet& a, const GroupSet& bprime,
                                 const GroupSet& bsecond, const Rational& alpha,
                                 const Rational& theta) {
    const GroupSpec& g = a.spec();
    require(bprime.spec() == g && bsecond.spec() == g, "sets live in different groups");
    require(!a.empty() && !bprime.empty() && !bsecond.empty(), "sets must be nonempty");
    require(theta > Rational(0) && theta < Rational(1), "theta must lie in (0, 1)");

    auto conv_counts = [&](const GroupSet& s) {
        std::vector<std::int64_t> cnt(g.order, 0);
        std::vector<std::int64_t> sm = s.members();
        a.for_each([&](std::int64_t y) {
            for (std::int64_t tt : sm) ++cnt[g.add(y, tt)];
        });
        return cnt;
    };
    std::vector<std::int64_t> c1 = conv_counts(bprime);
    std::vector<std::int64_t> c2 = conv_counts(bsecond);

    Rational inc = (Rational(1) + theta / Rational(2)) * alpha;
    std::int64_t x1 = 0, x2 = 0;
    for (std::int64_t x = 1; x < g.order; ++x) {
        if (c1[x] > c1[x1]) x1 = x;
        if (c2[x] > c2[x2]) x2 = x;
    }
    Rational v1(c1[x1], bprime.size());
    Rational v2(c2[x2], bsecond.size());
    if (v1 >= inc) return {TwoScaleOutcome::Kind::increment_first, x1, v1};
    if (v2 >= inc) return {TwoScaleOutcome::Kind::increment_second, x2, v2};

    Rational low = (Rational(1) - theta) * alpha;
    for (std::int64_t x = 0; x < g.order; ++x) {
        Rational w1(c1[x], bprime.size());
        Rational w2(c2[x], bsecond.size());
        if (w1 >= low && w2 >= low)
            return {TwoScaleOutcome::Kind::centers, x, rational_min(w1, w2)};
    }
    throw critical_error("two-scale pigeonhole: no increment and no common center");
}

namespace {

json step_json(const DriverStep& s) {
    return json{{"step", s.step},        {"alpha", s.alpha.str()},
                {"b_size", s.b_size},    {"branch", s.branch},
                {"witness", s.witness},  {"total", s.total_aps},
                {"trivial", s.trivial_aps}};
}

std::string trace_to_json(const std::vector<DriverStep>& rows, const DriverOutcome& out,
                          const GroupSpec& g) {
    json j;
    j["steps"] = json::array();
    for (const auto& r : rows) j["steps"].push_back(step_json(r));
    j["found"] = out.found;
    j["exhausted"] = out.exhausted;
    if (!out.reason.empty()) j["reason"] = out.reason;
    if (out.found) j["certificate"] = json::parse(certificate_to_json(out.certificate, g));
    return j.dump();
}

}  // namespace

DriverOutcome density_increment_driver(const GroupSet& a, const BourgainSystem& system,
                                       const DriverConfig& cfg) {
    const GroupSpec& g = a.spec();
    require(system.valid() && system.spec() == g, "system lives in a different group");
    require(!a.empty(), "A must be nonempty");
    GroupSet b0 = system.realize_unit();
    require(is_subset(a, b0), "A must lie in the system's level set");

    DriverOutcome out;

    if (auto d2 = order2_scan(a)) {
        std::int64_t bx = -1;
        for (std::int64_t e : a.members()) {
            if (a.contains(g.add(e, *d2))) { bx = e; break; }
        }
        ensure(bx >= 0, "order-2 difference without a realizing pair");
        ThreeAPCertificate cert{bx, g.add(bx, *d2), bx, g.str()};
        std::string why;
        ensure(verify_threeap(cert, a, &why), "driver emitted a bad certificate: " + why);
        out.found = true;
        out.certificate = cert;
        out.count_at_emit = count_threeaps(a, CountMode::brute);
        out.trace.push_back({0, Rational(a.size(), b0.size()), b0.size(), "order2", *d2,
                             out.count_at_emit.total, out.count_at_emit.trivial});
        out.trace_json = trace_to_json(out.trace, out, g);
        return out;
    }

    GroupSet cur = a;
    BourgainSystem sys = system;
    std::int64_t shift = 0;  // original element = current element + shift

    for (int step = 0; step <= cfg.step_cap; ++step) {
        GroupSet lvl = sys.realize_unit();
        Rational alpha(cur.size(), lvl.size());
        ThreeAPCount cnt = count_threeaps(cur, CountMode::brute);
        DriverStep row{step, alpha, lvl.size(), "", -1, cnt.total, cnt.trivial};

        if (cnt.total > cnt.trivial) {
            auto found = find_nontrivial_threeap(cur);
            ensure(found.has_value(), "positive nontrivial count but no triple located");
            ThreeAPCertificate cert = *found;
            cert.x = g.add(cert.x, shift);
            cert.y = g.add(cert.y, shift);
            cert.z = g.add(cert.z, shift);
            cert.group = g.str();
            std::string why;
            ensure(verify_threeap(cert, a, &why), "driver certificate failed re-check: " + why);
            row.branch = "certificate";
            out.trace.push_back(row);
            out.found = true;
            out.certificate = cert;
            out.count_at_emit = cnt;
            break;
        }
        if (step == cfg.step_cap) {
            row.branch = "exhausted";
            out.trace.push_back(row);
            out.exhausted = true;
            out.reason = "step cap reached";
            break;
        }
        if (alpha == Rational(1) || lvl.size() <= 2) {
            row.branch = "exhausted";
            out.trace.push_back(row);
            out.exhausted = true;
            out.reason = "structure collapsed without a progression";
            break;
        }

        try {
            double eta = std::min(1.0, std::sqrt(alpha.value()) / 2.0);
            std::int64_t d = std::max<std::int64_t>(probe_effective_dimension(sys), 1);

            // Sub-scale regular copy B' and the best translate of A onto it.
            Rational rho_sub = rational_from_double(cfg.tun.c_two_scale) * cfg.tun.theta_increment *
                               alpha / Rational(d);
            if (rho_sub > Rational(1)) rho_sub = Rational(1);
            if (rho_sub.num <= 0) rho_sub = Rational(1, std::int64_t(1) << 32);
            BourgainSystem bsub =
                regularity_scan(dilate_system(sys, rho_sub), d, cfg.tun).regular_system;
            GroupSet bprime = bsub.realize_unit();
            std::vector<std::int64_t> hits(g.order, 0);
            std::vector<std::int64_t> bm = bprime.members();
            cur.for_each([&](std::int64_t aa) {
                for (std::int64_t bb : bm) ++hits[g.sub(aa, bb)];
            });
            std::int64_t xc = 0;
            for (std::int64_t x = 1; x < g.order; ++x)
                if (hits[x] > hits[xc]) xc = x;
            GroupSet aprime = set_intersect(translate_set(cur, g.neg(xc)), bprime);
            ensure(!aprime.empty(), "empty sub-scale copy despite pigeonhole");

            // Annihilate the spectra of the copy and of its -2 image.
            Endomorphism minus2;
            minus2.scalar = -2;
            GroupSet aimage = dilate_set(-2, aprime);
            AnnihilatorResult ann1 = build_annihilator(bsub, aprime, eta, 0.5, cfg.tun);
            AnnihilatorResult ann2 =
                build_annihilator(image_system(bsub, minus2), aimage, eta, 0.5, cfg.tun);
            std::vector<std::int64_t> delta = ann1.spectrum;
            delta.insert(delta.end(), ann2.spectrum.begin(), ann2.spectrum.end());
            std::sort(delta.begin(), delta.end());
            delta.erase(std::unique(delta.begin(), delta.end()), delta.end());

            Rational rho = rational_from_double(cfg.tun.c_step) * cfg.kappa * alpha / Rational(d);
            if (rho > Rational(1)) rho = Rational(1);
            if (rho.num <= 0) rho = Rational(1, std::int64_t(1) << 32);
            BourgainSystem tsys = intersect_systems(
                {dilate_system(sys, rho), ann1.annihilator, ann2.annihilator});
            GroupSet t = tsys.realize_unit();

            auto w = l2_increment_step(cur, sys, delta, t, cfg.kappa, rho, cfg.tun);
            if (!w) {
                row.branch = "exhausted";
                out.trace.push_back(row);
                out.exhausted = true;
                out.reason = "spectral energy below the increment threshold";
                break;
            }
            row.branch = "increment";
            row.witness = w->x;
            out.trace.push_back(row);

            GroupSet next = set_intersect(translate_set(cur, g.neg(w->x)), t);
            ensure(Rational(next.size(), t.size()) == w->new_density,
                   "translate-intersection disagrees with the convolution count");
            ensure(w->new_density >= (Rational(1) + Rational(1, 65536)) * alpha,
                   "density growth below 1 + 2^-16");
            cur = next;
            sys = tsys;
            shift = g.add(shift, w->x);
        } catch (const std::exception& e) {
            row.branch = "exhausted";
            out.trace.push_back(row);
            out.exhausted = true;
            out.reason = std::string("increment machinery: ") + e.what();
            break;
        }
    }
    out.trace_json = trace_to_json(out.trace, out, g);
    return out;
}

}  // namespace bourgainlab
