#include "bourgainlab/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "bourgainlab/fft.hpp"

namespace bourgainlab {

namespace {
constexpr double kSupportEps = 1e-12;

// Apply the cyclic transform along every coordinate axis. The group order is
// the product of the axis lengths, so iterating lines per axis covers the
// whole transform.
void transform_axes(const GroupSpec& g, std::vector<std::complex<double>>& data, bool backward) {
    for (std::size_t axis = 0; axis < g.moduli.size(); ++axis) {
        const std::int64_t m = g.moduli[axis];
        if (m == 1) continue;
        CyclicPlan plan(m);
        const std::int64_t stride = g.strides[axis];
        const std::int64_t block = stride * m;
        std::vector<std::complex<double>> line(m);
        for (std::int64_t base = 0; base < g.order; base += block) {
            for (std::int64_t off = 0; off < stride; ++off) {
                for (std::int64_t k = 0; k < m; ++k) line[k] = data[base + off + k * stride];
                if (backward) {
                    plan.backward(line.data());
                } else {
                    plan.forward(line.data());
                }
                for (std::int64_t k = 0; k < m; ++k) data[base + off + k * stride] = line[k];
            }
        }
    }
}
}  // namespace

Measure::Measure(DenseFunction d) : density(std::move(d)) {
    double mass = 0.0;
    for (const auto& v : density.values) {
        require(v.imag() == 0.0 && v.real() >= -1e-12, "measure density must be nonnegative real");
        mass += v.real();
    }
    mass /= static_cast<double>(density.spec.order);
    require(std::abs(mass - 1.0) <= 1e-12, "measure must have expectation 1");
}

DenseFunction indicator(const GroupSet& a) {
    DenseFunction f(a.spec());
    a.for_each([&](std::int64_t e) { f.values[e] = 1.0; });
    return f;
}

Measure uniform_measure(const GroupSet& a) {
    require(!a.empty(), "uniform measure of the empty set");
    DenseFunction f(a.spec());
    const double v = static_cast<double>(a.spec().order) / static_cast<double>(a.size());
    a.for_each([&](std::int64_t e) { f.values[e] = v; });
    return Measure(std::move(f));
}

Measure point_mass(const GroupSpec& g, std::int64_t x) {
    DenseFunction f(g);
    f.values[x] = static_cast<double>(g.order);
    return Measure(std::move(f));
}

double lp_norm(const DenseFunction& f, double p) {
    require(p >= 1.0, "lp_norm: p must be >= 1");
    long double acc = 0.0L;
    for (const auto& v : f.values) acc += std::pow(static_cast<long double>(std::abs(v)), p);
    acc /= static_cast<long double>(f.spec.order);
    return static_cast<double>(std::pow(acc, 1.0L / p));
}

double sup_norm(const DenseFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> inner_product(const DenseFunction& f, const DenseFunction& g) {
    require(f.spec == g.spec, "inner_product: group mismatch");
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::int64_t i = 0; i < f.spec.order; ++i) {
        acc += std::complex<long double>(f.values[i]) *
               std::conj(std::complex<long double>(g.values[i]));
    }
    acc /= static_cast<long double>(f.spec.order);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

DualFunction fourier(const DenseFunction& f) {
    DualFunction out(f.spec);
    out.values = f.values;
    transform_axes(f.spec, out.values, false);
    const double inv = 1.0 / static_cast<double>(f.spec.order);
    for (auto& v : out.values) v *= inv;
    return out;
}

DenseFunction inverse_fourier(const DualFunction& f) {
    DenseFunction out(f.spec);
    out.values = f.values;
    transform_axes(f.spec, out.values, true);
    return out;
}

double dual_lp_norm(const DualFunction& f, double p) {
    require(p >= 1.0, "dual_lp_norm: p must be >= 1");
    long double acc = 0.0L;
    for (const auto& v : f.values) acc += std::pow(static_cast<long double>(std::abs(v)), p);
    return static_cast<double>(std::pow(acc, 1.0L / p));
}

DenseFunction convolve(const DenseFunction& f, const DenseFunction& g) {
    require(f.spec == g.spec, "convolve: group mismatch");
    DualFunction fh = fourier(f);
    DualFunction gh = fourier(g);
    for (std::int64_t i = 0; i < f.spec.order; ++i) fh.values[i] *= gh.values[i];
    return inverse_fourier(fh);
}

DenseFunction convolve_naive(const DenseFunction& f, const DenseFunction& g) {
    require(f.spec == g.spec, "convolve: group mismatch");
    const GroupSpec& spec = f.spec;
    DenseFunction out(spec);
    for (std::int64_t x = 0; x < spec.order; ++x) {
        std::complex<long double> acc(0.0L, 0.0L);
        for (std::int64_t y = 0; y < spec.order; ++y) {
            acc += std::complex<long double>(f.values[y]) *
                   std::complex<long double>(g.values[spec.sub(x, y)]);
        }
        acc /= static_cast<long double>(spec.order);
        out.values[x] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

DenseFunction convolve(const DenseFunction& f, const Measure& m) {
    return convolve(f, m.density);
}

DenseFunction convolution_power(const DenseFunction& f, std::int64_t ell) {
    require(ell >= 1, "convolution_power: l must be >= 1");
    DualFunction fh = fourier(f);
    DualFunction acc = fh;
    for (std::int64_t i = 1; i < ell; ++i) {
        for (std::int64_t j = 0; j < f.spec.order; ++j) acc.values[j] *= fh.values[j];
    }
    return inverse_fourier(acc);
}

DenseFunction translate(const DenseFunction& f, std::int64_t x) {
    DenseFunction out(f.spec);
    for (std::int64_t u = 0; u < f.spec.order; ++u) out.values[u] = f.values[f.spec.add(u, x)];
    return out;
}

std::vector<std::int64_t> large_spectrum(const DenseFunction& f, double eta) {
    require(eta >= 0.0, "large_spectrum: eta must be nonnegative");
    const double l1 = lp_norm(f, 1.0);
    require(l1 > 0.0, "large_spectrum: zero function");
    DualFunction fh = fourier(f);
    const double cut = eta * l1 * (1.0 - 1e-12);
    std::vector<std::int64_t> out;
    for (std::int64_t j = 0; j < f.spec.order; ++j) {
        if (std::abs(fh.values[j]) >= cut) out.push_back(j);
    }
    return out;
}

GroupSet support(const DenseFunction& f) {
    GroupSet s(f.spec);
    for (std::int64_t i = 0; i < f.spec.order; ++i) {
        if (std::abs(f.values[i]) > kSupportEps) s.insert(i);
    }
    return s;
}

std::vector<std::int64_t> sum_counts(const GroupSet& a, const GroupSet& b) {
    require(a.spec() == b.spec(), "sum_counts: group mismatch");
    const GroupSpec& g = a.spec();
    std::vector<std::int64_t> r(g.order, 0);
    auto bm = b.members();
    a.for_each([&](std::int64_t x) {
        for (auto y : bm) ++r[g.add(x, y)];
    });
    return r;
}

std::string dense_to_json(const DenseFunction& f) {
    auto arr = nlohmann::json::array();
    for (const auto& v : f.values) arr.push_back({v.real(), v.imag()});
    return arr.dump();
}

DenseFunction dense_from_json(const GroupSpec& g, const std::string& text) {
    auto j = nlohmann::json::parse(text);
    require(static_cast<std::int64_t>(j.size()) == g.order,
            "serialized function length does not match the group order");
    DenseFunction f(g);
    for (std::int64_t i = 0; i < g.order; ++i) {
        f.values[i] = {j[i][0].get<double>(), j[i][1].get<double>()};
    }
    return f;
}

}  // namespace bourgainlab
