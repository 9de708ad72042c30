#pragma once

#include <fftw3.h>

#include <mutex>

namespace orbital::detail {

// FFTW plan creation/destruction is not thread-safe; executions on distinct
// plans are. All planning goes through this lock.
inline std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// RAII in-place c2c transform pair over an owned, FFTW-allocated buffer.
class InplaceFft2D {
 public:
  explicit InplaceFft2D(int n) : n_(n) {
    buffer_ = fftw_alloc_complex(static_cast<size_t>(n) * n);
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    // Deterministic planning: ESTIMATE never measures, so identical inputs
    // yield identical plans and bit-identical outputs.
    forward_ = fftw_plan_dft_2d(n, n, buffer_, buffer_, FFTW_FORWARD,
                                FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(n, n, buffer_, buffer_, FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  }
  ~InplaceFft2D() {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  InplaceFft2D(const InplaceFft2D&) = delete;
  InplaceFft2D& operator=(const InplaceFft2D&) = delete;

  std::complex<double>* data() {
    return reinterpret_cast<std::complex<double>*>(buffer_);
  }
  const std::complex<double>* data() const {
    return reinterpret_cast<const std::complex<double>*>(buffer_);
  }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }
  int size() const { return n_; }

 private:
  int n_;
  fftw_complex* buffer_;
  fftw_plan forward_;
  fftw_plan backward_;
};

// In-place DST-I pair (hard-wall boundary conditions), for 1D interior grids.
class InplaceDst1D {
 public:
  explicit InplaceDst1D(int n) : n_(n) {
    buffer_ = fftw_alloc_real(n);
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan_ = fftw_plan_r2r_1d(n, buffer_, buffer_, FFTW_RODFT00, FFTW_ESTIMATE);
  }
  ~InplaceDst1D() {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buffer_);
  }
  InplaceDst1D(const InplaceDst1D&) = delete;
  InplaceDst1D& operator=(const InplaceDst1D&) = delete;

  double* data() { return buffer_; }
  void execute() { fftw_execute(plan_); }
  // RODFT00 applied twice multiplies by 2 (n + 1).
  double round_trip_scale() const { return 2.0 * (n_ + 1); }

 private:
  int n_;
  double* buffer_;
  fftw_plan plan_;
};

}  // namespace orbital::detail
