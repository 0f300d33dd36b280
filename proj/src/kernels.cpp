#include <cstdlib>
#include <cstring>

#include "patchdyn/error.hpp"
#include "patchdyn/kernels.hpp"

namespace patchdyn::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, detail::horner_scalar, detail::rhs_scalar};
#if defined(PATCHDYN_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, detail::horner_avx2, detail::rhs_avx2};
#endif
#if defined(PATCHDYN_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, detail::horner_neon, detail::rhs_neon};
#endif

const KernelTable& select() {
  const char* env = std::getenv("PATCHDYN_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return kScalar;
#if defined(PATCHDYN_HAVE_AVX2)
  if (supported(Isa::Avx2)) return kAvx2;
#endif
#if defined(PATCHDYN_HAVE_NEON)
  return kNeon;
#endif
  return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(PATCHDYN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(PATCHDYN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw InvalidInput("kernel ISA not available: " + std::string(to_string(isa)));
  switch (isa) {
#if defined(PATCHDYN_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(PATCHDYN_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& t = select();
  return t;
}

void horner(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  if (out.size() != xs.size()) throw InvalidInput("horner: output size mismatch");
  active().horner(coeffs, xs, out);
}

void rhs_batch(const ModelParams& p, const StateBatch& s, const RateBatch& out) {
  const std::size_t n = s.size();
  if (s.y1.size() != n || s.x2.size() != n || s.y2.size() != n || out.x1.size() != n ||
      out.y1.size() != n || out.x2.size() != n || out.y2.size() != n)
    throw InvalidInput("rhs_batch: batch size mismatch");
  active().rhs(p, s, out);
}

}  // namespace patchdyn::kernels
