#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bourgainlab/group.hpp"

namespace bourgainlab {

/**
 * Normalization conventions, fixed across the library:
 *   physical space carries expectation: ||f||_p = (E_G |f|^p)^{1/p},
 *   <f,g> = E_G f conj(g), (f*g)(x) = E_y f(y) g(x-y);
 *   the dual carries counting measure: fhat(j) = E_G f conj(gamma_j),
 *   f = sum_j fhat(j) gamma_j, <f,g> = sum_j fhat conj(ghat),
 *   (f*g)hat = fhat * ghat.
 */
struct DenseFunction {
    GroupSpec spec;
    std::vector<std::complex<double>> values;

    DenseFunction() = default;
    explicit DenseFunction(const GroupSpec& g)
        : spec(g), values(g.order, std::complex<double>(0.0, 0.0)) {}
};

struct DualFunction {
    GroupSpec spec;
    std::vector<std::complex<double>> values;  // indexed by character index

    DualFunction() = default;
    explicit DualFunction(const GroupSpec& g)
        : spec(g), values(g.order, std::complex<double>(0.0, 0.0)) {}
};

// Nonnegative with expectation 1 (tolerance 1e-12 checked at construction).
struct Measure {
    DenseFunction density;

    Measure() = default;
    explicit Measure(DenseFunction d);
    const GroupSpec& spec() const { return density.spec; }
};

DenseFunction indicator(const GroupSet& a);
// mu_A = mu_G(A)^{-1} 1_A; exact value |G|/|A| on members.
Measure uniform_measure(const GroupSet& a);
Measure point_mass(const GroupSpec& g, std::int64_t x);

double lp_norm(const DenseFunction& f, double p);  // p >= 1
double sup_norm(const DenseFunction& f);
std::complex<double> inner_product(const DenseFunction& f, const DenseFunction& g);

DualFunction fourier(const DenseFunction& f);
DenseFunction inverse_fourier(const DualFunction& f);

// Dual-side norms use counting measure: ||F||_p = (sum |F|^p)^{1/p}.
double dual_lp_norm(const DualFunction& f, double p);

DenseFunction convolve(const DenseFunction& f, const DenseFunction& g);        // FFT path
DenseFunction convolve_naive(const DenseFunction& f, const DenseFunction& g);  // O(|G|^2)
DenseFunction convolve(const DenseFunction& f, const Measure& m);
// l-fold convolution power f^{(l)}, l >= 1.
DenseFunction convolution_power(const DenseFunction& f, std::int64_t ell);

// (tau_x f)(u) = f(u + x).
DenseFunction translate(const DenseFunction& f, std::int64_t x);

// Spec_eta(f) = { j : |fhat(j)| >= eta ||f||_1 }, threshold inclusive with a
// 1e-12 relative guard against transform rounding. f must not be zero.
std::vector<std::int64_t> large_spectrum(const DenseFunction& f, double eta);

GroupSet support(const DenseFunction& f);  // |f| > 1e-12

// Exact integer convolution: r(x) = #{(a,b) in A x B : a + b = x}.
// 1_A * 1_B = r / |G| and |A cap (x - B)| = r(x).
std::vector<std::int64_t> sum_counts(const GroupSet& a, const GroupSet& b);

std::string dense_to_json(const DenseFunction& f);
DenseFunction dense_from_json(const GroupSpec& g, const std::string& text);

}  // namespace bourgainlab
