#include "normlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace normlab {

void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(std::max<std::size_t>(bytes, 1));
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

ComplexBuffer& scratch(std::size_t size) {
  thread_local ComplexBuffer buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

}  // namespace

FftEngine::FftEngine(const Grid& g) : size_(g.size()), spectral_size_(g.spectral_size()) {
  RealBuffer real(size_);
  ComplexBuffer cplx(spectral_size_);
  auto* out = reinterpret_cast<fftw_complex*>(cplx.data());
  if (g.dim() == 1) {
    forward_plan_ = fftw_plan_dft_r2c_1d(g.n(), real.data(), out, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(g.n(), out, real.data(), FFTW_ESTIMATE);
  } else {
    forward_plan_ = fftw_plan_dft_r2c_2d(g.n(), g.n(), real.data(), out, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_2d(g.n(), g.n(), out, real.data(), FFTW_ESTIMATE);
  }
}

FftEngine::~FftEngine() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const FftEngine& FftEngine::for_grid(const Grid& g) {
  static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{g.dim(), g.n()}];
  if (!slot) slot.reset(new FftEngine(g));
  return *slot;
}

void FftEngine::forward(const double* in, std::complex<double>* out) const {
  // r2c does not modify its input.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t k = 0; k < spectral_size_; ++k) out[k] *= scale;
}

void FftEngine::inverse(const std::complex<double>* in, double* out) const {
  ComplexBuffer& work = scratch(spectral_size_);
  std::copy(in, in + spectral_size_, work.begin());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(work.data()),
                       out);
}

}  // namespace normlab
