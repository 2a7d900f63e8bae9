#include "bourgainlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bourgainlab/common.hpp"
#include "json.hpp"

namespace bourgainlab {

using json = nlohmann::ordered_json;

AnnihilationCheck annihilation_check(const GroupSpec& g,
                                     const std::vector<std::int64_t>& characters,
                                     const GroupSet& t, double nu) {
    require(nu > 0.0 && nu <= 2.0, "annihilation tolerance must lie in (0, 2]");
    require(t.spec() == g, "set lives in a different group");
    AnnihilationCheck out;
    for (std::int64_t c : characters) {
        require(c >= 0 && c < g.order, "character out of range");
        t.for_each([&](std::int64_t e) {
            double gap = character_gap(g, c, e);
            if (gap > out.worst_gap) {
                out.worst_gap = gap;
                out.worst_char = c;
                out.worst_elt = e;
            }
        });
    }
    out.passed = out.worst_gap <= nu + 1e-12;
    return out;
}

namespace {

// Tabulated character values on the support of mu, with weights mu(x)/|G|.
struct ProbeTable {
    std::vector<double> weight;
    std::vector<std::vector<std::complex<double>>> gamma;  // [char][point]
};

ProbeTable probe_table(const DissociationProbe& p) {
    const GroupSpec& g = p.mu.spec();
    ProbeTable t;
    GroupSet supp = support(p.mu.density);
    std::vector<std::int64_t> pts = supp.members();
    t.weight.reserve(pts.size());
    for (std::int64_t x : pts)
        t.weight.push_back(p.mu.density.values[x].real() / static_cast<double>(g.order));
    t.gamma.resize(p.lambda.size());
    for (std::size_t j = 0; j < p.lambda.size(); ++j) {
        t.gamma[j].reserve(pts.size());
        for (std::int64_t x : pts) {
            double ph = 2.0 * std::numbers::pi * static_cast<double>(g.phase_numerator(p.lambda[j], x)) /
                        static_cast<double>(g.exponent);
            t.gamma[j].emplace_back(std::cos(ph), std::sin(ph));
        }
    }
    return t;
}

long double probe_value(const ProbeTable& t, const std::vector<std::complex<double>>& omega) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
        long double prod = t.weight[i];
        for (std::size_t j = 0; j < omega.size(); ++j) {
            std::complex<double> v = omega[j] * t.gamma[j][i];
            prod *= 1.0L + static_cast<long double>(v.real());
        }
        acc += prod;
    }
    return acc;
}

// One ascent sweep: for each coordinate, D = base + Re[omega_j Q_j] with
// Q_j independent of omega_j; the circle optimum is conj(Q_j)/|Q_j|.
double ascend(const ProbeTable& t, std::vector<std::complex<double>>& omega, int max_sweeps) {
    double cur = static_cast<double>(probe_value(t, omega));
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (std::size_t j = 0; j < omega.size(); ++j) {
            std::complex<long double> q = 0.0L;
            for (std::size_t i = 0; i < t.weight.size(); ++i) {
                long double prod = t.weight[i];
                for (std::size_t k = 0; k < omega.size(); ++k) {
                    if (k == j) continue;
                    std::complex<double> v = omega[k] * t.gamma[k][i];
                    prod *= 1.0L + static_cast<long double>(v.real());
                }
                q += prod * std::complex<long double>(t.gamma[j][i]);
            }
            double qa = static_cast<double>(std::abs(q));
            if (qa > 1e-15) {
                std::complex<long double> u = std::conj(q) / std::complex<long double>(qa);
                omega[j] = std::complex<double>(static_cast<double>(u.real()),
                                                static_cast<double>(u.imag()));
            }
        }
        double nxt = static_cast<double>(probe_value(t, omega));
        if (nxt <= cur + 1e-13 * (1.0 + std::abs(cur))) return nxt;
        cur = nxt;
    }
    return cur;
}

}  // namespace

ProbeOutcome dissociation_probe(const DissociationProbe& probe) {
    require(!probe.lambda.empty(), "probe needs a nonempty candidate set");
    require(probe.theta > 0.0 && probe.theta <= 1.0, "probe threshold must lie in (0, 1]");
    require(probe.phase_grid >= 8, "phase grid must have at least 8 points");
    const GroupSpec& g = probe.mu.spec();
    for (std::int64_t c : probe.lambda) require(c >= 0 && c < g.order, "character out of range");

    ProbeTable table = probe_table(probe);
    double target = std::exp(probe.theta);

    ProbeOutcome out;
    std::vector<std::complex<double>> best_omega;
    for (int r = 0; r <= probe.restarts; ++r) {
        std::vector<std::complex<double>> omega(probe.lambda.size(), {1.0, 0.0});
        if (r > 0) {
            DetRng rng(mix_seed(probe.seed, static_cast<std::uint64_t>(r)));
            for (auto& w : omega) {
                double ph = 2.0 * std::numbers::pi *
                            static_cast<double>(rng.below(static_cast<std::uint64_t>(probe.phase_grid))) /
                            static_cast<double>(probe.phase_grid);
                w = {std::cos(ph), std::sin(ph)};
            }
        }
        double v = ascend(table, omega, 50);
        if (v > out.max_found) {
            out.max_found = v;
            best_omega = omega;
        }
        if (out.max_found > target * (1.0 + 1e-9)) break;
    }
    if (!best_omega.empty() && out.max_found > target * (1.0 + 1e-9)) {
        // Certificates are sound: re-evaluate the witness from scratch.
        long double exact = probe_value(table, best_omega);
        if (static_cast<double>(exact) > target) {
            out.certified_not_dissociated = true;
            out.witness = best_omega;
            out.max_found = static_cast<double>(exact);
        }
    }
    return out;
}

GreedyDissociated greedy_dissociated(const GroupSpec& g, const std::vector<std::int64_t>& delta,
                                     const Measure& mu, double theta, const Tunables& tun) {
    require(mu.spec() == g, "measure lives in a different group");
    GreedyDissociated out;
    for (std::int64_t c : delta) {
        DissociationProbe p;
        p.lambda = out.lambda;
        p.lambda.push_back(c);
        p.mu = mu;
        p.theta = theta;
        p.phase_grid = tun.probe_phase_grid;
        p.restarts = tun.probe_restarts;
        p.seed = mix_seed(tun.seed, static_cast<std::uint64_t>(c));
        if (!dissociation_probe(p).certified_not_dissociated) out.lambda.push_back(c);
    }
    out.m = std::max<std::int64_t>(static_cast<std::int64_t>(out.lambda.size()), 1);
    return out;
}

ChangReport chang_report(double eta, double tau, std::int64_t m, const Tunables& tun) {
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
    require(m >= 1, "m must be at least 1");
    ChangReport r;
    r.budget = tun.chang_budget;
    r.ratio = static_cast<double>(m) * eta * eta / ell(tau);
    r.within = r.ratio <= r.budget + 1e-12;
    return r;
}

ControlledSystem make_controlled(const BourgainSystem& s, std::int64_t m, double c_ctl) {
    require(m >= 1, "control parameter must be at least 1");
    require(s.declared_dimension() <= m, "declared dimension exceeds the control parameter");
    double density = static_cast<double>(s.realize_unit().size()) /
                     static_cast<double>(s.spec().order);
    double floor = std::exp(-c_ctl * static_cast<double>(m) * std::log(static_cast<double>(m)));
    ensure(density >= floor * (1.0 - 1e-12), "controlled system below its density floor");
    return ControlledSystem{s, m, c_ctl};
}

AnnihilatorResult build_annihilator(const BourgainSystem& base, const GroupSet& x, double eta,
                                    double nu, const Tunables& tun) {
    require(base.valid(), "empty system");
    require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    require(nu > 0.0 && nu <= 2.0, "nu must lie in (0, 2]");
    const GroupSpec& g = base.spec();
    GroupSet b1 = base.realize_unit();
    require(!x.empty(), "X must be nonempty");
    require(is_subset(x, b1), "X must lie inside the base level set");

    double tau = static_cast<double>(x.size()) / static_cast<double>(b1.size());
    Measure mu_x = uniform_measure(x);
    Measure mu_b = uniform_measure(b1);

    AnnihilatorResult res;
    res.spectrum = large_spectrum(mu_x.density, eta);

    if (nu >= 2.0) {
        // |1 - gamma| <= 2 holds identically.
        res.annihilator = dilate_system(base, Rational(1));
        res.controlled = make_controlled(BourgainSystem::whole_group(g), 1, tun.c_ctl);
        res.m = 1;
        res.chang = chang_report(eta, tau, 1, tun);
        res.c_ann = tun.c_ann;
        res.margin = 2.0 - annihilation_check(g, res.spectrum, res.annihilator.realize_unit(), nu)
                               .worst_gap;
        res.trace = json{{"trivial", true}, {"spectrum", res.spectrum.size()}}.dump();
        return res;
    }

    GreedyDissociated greedy = greedy_dissociated(g, res.spectrum, mu_b, 1.0, tun);
    res.dissociated = greedy.lambda;
    res.m = greedy.m;
    res.chang = chang_report(eta, tau, greedy.m, tun);

    std::int64_t d = std::max<std::int64_t>(probe_effective_dimension(base), 1);
    std::int64_t k = static_cast<std::int64_t>(greedy.lambda.size());
    std::int64_t m_ctl = std::max<std::int64_t>(1, 6 * k);

    auto clamp_radius = [](double v) {
        Rational r = rational_from_double(v);
        if (r.num <= 0) r = Rational(1, std::int64_t(1) << 32);
        if (r > Rational(1)) r = Rational(1);
        return r;
    };

    double worst_best = 2.0;
    for (int attempt = 0; attempt <= tun.ann_retries; ++attempt) {
        double c = tun.c_ann * std::exp2(-attempt);
        Rational inner = clamp_radius(c * nu / (static_cast<double>(d * d) *
                                                static_cast<double>(greedy.m)));
        Rational bohr_radius = clamp_radius(c / static_cast<double>(greedy.m));
        BourgainSystem side = BourgainSystem::bohr(g, greedy.lambda, bohr_radius);
        Rational nu_dilate = clamp_radius(nu);
        BourgainSystem candidate = intersect_systems(
            {dilate_system(base, inner), dilate_system(side, nu_dilate)});
        RegularityResult reg = regularity_scan(
            candidate, std::max<std::int64_t>(candidate.declared_dimension(), 1), tun);
        AnnihilationCheck chk = annihilation_check(g, res.spectrum,
                                                   reg.regular_system.realize_unit(), nu);
        worst_best = std::min(worst_best, chk.worst_gap);
        if (chk.passed) {
            res.annihilator = reg.regular_system;
            res.controlled = make_controlled(side, m_ctl, tun.c_ctl);
            res.retries = attempt;
            res.c_ann = c;
            res.margin = nu - chk.worst_gap;
            res.lambda_star = reg.lambda_star;
            res.trace = json{{"spectrum", res.spectrum.size()},
                             {"dissociated", k},
                             {"m", greedy.m},
                             {"effective_dim", d},
                             {"retries", attempt},
                             {"c_ann", c},
                             {"margin", res.margin},
                             {"lambda_star", reg.lambda_star.str()},
                             {"chang_ratio", res.chang.ratio}}
                            .dump();
            return res;
        }
    }
    throw search_error("annihilator failed its post-check after all retries", 2.0 - worst_best);
}

}  // namespace bourgainlab
