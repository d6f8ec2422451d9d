#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include "normlab/grid.hpp"

namespace normlab {

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;

template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t count) {
    return static_cast<T*>(fftw_aligned_alloc(count * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_aligned_free(p); }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, FftwAllocator<double>>;
using ComplexBuffer = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

/// Cached FFTW plans for one grid shape.
///
/// Plans are built with FFTW_ESTIMATE so that repeated runs execute the same
/// arithmetic and produce bitwise-identical output. The forward transform is
/// normalized by the number of samples: a constant field 1 maps to a zero mode
/// equal to 1.
class FftEngine {
 public:
  static const FftEngine& for_grid(const Grid& g);

  void forward(const double* in, std::complex<double>* out) const;
  /// Input is left untouched; the engine copies into a scratch buffer.
  void inverse(const std::complex<double>* in, double* out) const;

  std::size_t size() const noexcept { return size_; }
  std::size_t spectral_size() const noexcept { return spectral_size_; }

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  ~FftEngine();

 private:
  explicit FftEngine(const Grid& g);
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  std::size_t size_ = 0;
  std::size_t spectral_size_ = 0;
};

}  // namespace normlab
