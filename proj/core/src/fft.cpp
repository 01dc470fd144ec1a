#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace oising::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> transform(std::span<const Complex> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> in(x.begin(), x.end());
  std::vector<Complex> out(x.size());
  if (n == 0) return out;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<Complex> fft_forward(std::span<const Complex> x) { return transform(x, FFTW_FORWARD); }

std::vector<Complex> fft_backward(std::span<const Complex> x) {
  return transform(x, FFTW_BACKWARD);
}

std::vector<Complex> fft_forward_real(std::span<const double> x) {
  std::vector<Complex> c(x.begin(), x.end());
  return fft_forward(c);
}

}  // namespace oising::detail
