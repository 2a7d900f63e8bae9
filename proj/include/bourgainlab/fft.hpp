#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bourgainlab {

/**
 * Cyclic DFT of arbitrary length: radix-2 in place when the length is a power
 * of two, Bluestein's chirp algorithm (padded to a power of two) otherwise.
 * forward computes y_k = sum_j x_j e(-jk/n); backward uses e(+jk/n).
 * No normalization on either direction; callers own the 1/|G| convention.
 * Plans hold only immutable precomputed tables, so a plan is safe to share
 * across threads.
 */
class CyclicPlan {
  public:
    explicit CyclicPlan(std::int64_t n);

    std::int64_t length() const { return n_; }
    void forward(std::complex<double>* data) const { run(data, false); }
    void backward(std::complex<double>* data) const { run(data, true); }

  private:
    std::int64_t n_;
    std::int64_t padded_ = 0;  // 0 when n is a power of two
    // Bluestein tables: chirp c_k = e(-k^2/(2n)) and the padded transform of
    // its conjugate, for each direction.
    std::vector<std::complex<double>> chirp_f_, chirp_b_;
    std::vector<std::complex<double>> kernel_f_, kernel_b_;

    void run(std::complex<double>* data, bool backward) const;
};

// In-place radix-2 transform, n a power of two. backward flips the twiddle sign.
void pow2_fft(std::complex<double>* data, std::int64_t n, bool backward);

// O(n^2) reference transform, kept as an oracle for tests.
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                            bool backward);

}  // namespace bourgainlab
