#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace cyclo::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  // Planning-time buffers; kept alive for the lifetime of the plan.
  std::vector<std::complex<double>> a, b;
};

std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

fftw_complex* c_cast(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

const PlanPair& plans_for(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  PlanPair p;
  p.a.resize(n);
  p.b.resize(n);
  // FFTW_UNALIGNED so the new-array execute below accepts any buffers.
  p.forward = fftw_plan_dft_1d(n, c_cast(p.a.data()), c_cast(p.b.data()),
                               FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(n, c_cast(p.a.data()), c_cast(p.b.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

void fft_forward(const std::complex<double>* in, std::complex<double>* out,
                 int n) {
  const PlanPair& p = plans_for(n);
  fftw_execute_dft(p.forward, c_cast(const_cast<std::complex<double>*>(in)),
                   c_cast(out));
}

void fft_backward(const std::complex<double>* in, std::complex<double>* out,
                  int n) {
  const PlanPair& p = plans_for(n);
  fftw_execute_dft(p.backward, c_cast(const_cast<std::complex<double>*>(in)),
                   c_cast(out));
}

}  // namespace cyclo::detail
