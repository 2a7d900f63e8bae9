#include "doctest.h"

#include "bourgainlab/harmonic.hpp"

#include <complex>
#include <random>
#include <vector>

using namespace bourgainlab;

namespace {

// Reference transform straight from the character table.
DualFunction dft_by_definition(const DenseFunction& f) {
    const GroupSpec& g = f.spec;
    const double tau = 6.283185307179586476925286766559;
    DualFunction out(g);
    for (std::int64_t j = 0; j < g.order; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (std::int64_t x = 0; x < g.order; ++x) {
            double phase = tau * double(g.phase_numerator(j, x)) / double(g.exponent);
            acc += f.values[x] * std::complex<double>(std::cos(phase), -std::sin(phase));
        }
        out.values[j] = acc / double(g.order);
    }
    return out;
}

DenseFunction random_function(const GroupSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseFunction f(g);
    for (auto& v : f.values) v = std::complex<double>(dist(rng), dist(rng));
    return f;
}

double max_diff(const std::vector<std::complex<double>>& a,
                const std::vector<std::complex<double>>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("fourier matches the definition on assorted group shapes") {
    unsigned seed = 1;
    for (const char* name :
         {"Z1", "Z2", "Z8", "Z12", "Z17", "Z100", "Z243", "Z2xZ3", "Z4xZ8", "Z3^3"}) {
        CAPTURE(name);
        GroupSpec g = parse_group_spec(name);
        DenseFunction f = random_function(g, seed++);
        DualFunction fast = fourier(f);
        DualFunction slow = dft_by_definition(f);
        CHECK(max_diff(fast.values, slow.values) < 1e-9);
    }
}

TEST_CASE("inverse transform round trips") {
    unsigned seed = 100;
    for (const char* name : {"Z2", "Z17", "Z64", "Z100", "Z4xZ25", "Z8xZ9"}) {
        CAPTURE(name);
        GroupSpec g = parse_group_spec(name);
        DenseFunction f = random_function(g, seed++);
        DenseFunction back = inverse_fourier(fourier(f));
        CHECK(max_diff(f.values, back.values) < 1e-9);
    }
}

TEST_CASE("transform of delta and of the constant") {
    GroupSpec g = parse_group_spec("Z12");

    DenseFunction delta(g);
    delta.values[0] = 1.0;
    DualFunction dhat = fourier(delta);
    for (std::int64_t j = 0; j < g.order; ++j)
        CHECK(std::abs(dhat.values[j] - 1.0 / 12.0) < 1e-12);

    DenseFunction ones(g);
    for (auto& v : ones.values) v = 1.0;
    DualFunction ohat = fourier(ones);
    CHECK(std::abs(ohat.values[0] - 1.0) < 1e-12);
    for (std::int64_t j = 1; j < g.order; ++j) CHECK(std::abs(ohat.values[j]) < 1e-12);
}

TEST_CASE("convolution theorem") {
    GroupSpec g = parse_group_spec("Z17");
    DenseFunction f = random_function(g, 7);
    DenseFunction h = random_function(g, 8);
    DualFunction lhs = fourier(convolve(f, h));
    DualFunction fh = fourier(f);
    DualFunction hh = fourier(h);
    for (std::int64_t j = 0; j < g.order; ++j)
        CHECK(std::abs(lhs.values[j] - fh.values[j] * hh.values[j]) < 1e-9);
}

TEST_CASE("fft convolution agrees with the quadratic loop") {
    for (const char* name : {"Z13", "Z100", "Z2xZ3"}) {
        CAPTURE(name);
        GroupSpec g = parse_group_spec(name);
        DenseFunction f = random_function(g, 21);
        DenseFunction h = random_function(g, 22);
        CHECK(max_diff(convolve(f, h).values, convolve_naive(f, h).values) < 1e-9);
    }
}
