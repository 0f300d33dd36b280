#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "patchdyn/model.hpp"

// Batched inner loops with a scalar reference and a SIMD variant picked at
// runtime. Every variant must agree with the scalar one to rounding.
namespace patchdyn::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct StateBatch {
  std::span<const double> x1, y1, x2, y2;
  std::size_t size() const { return x1.size(); }
};

struct RateBatch {
  std::span<double> x1, y1, x2, y2;
};

// coeffs ascending; out[k] = sum_i coeffs[i] xs[k]^i
using HornerFn = void (*)(std::span<const double> coeffs, std::span<const double> xs,
                          std::span<double> out);
using RhsFn = void (*)(const ModelParams& p, const StateBatch& s, const RateBatch& out);

struct KernelTable {
  Isa isa;
  HornerFn horner;
  RhsFn rhs;
};

bool supported(Isa isa);

// Throws InvalidInput if the ISA is not compiled in or not supported by the CPU.
const KernelTable& table(Isa isa);

// Best supported ISA, unless PATCHDYN_SIMD=scalar is set.
const KernelTable& active();

// Wrappers that check the span sizes and use active().
void horner(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out);
void rhs_batch(const ModelParams& p, const StateBatch& s, const RateBatch& out);

namespace detail {
void horner_scalar(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out);
void rhs_scalar(const ModelParams& p, const StateBatch& s, const RateBatch& out);
#if defined(PATCHDYN_HAVE_AVX2)
void horner_avx2(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out);
void rhs_avx2(const ModelParams& p, const StateBatch& s, const RateBatch& out);
#endif
#if defined(PATCHDYN_HAVE_NEON)
void horner_neon(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out);
void rhs_neon(const ModelParams& p, const StateBatch& s, const RateBatch& out);
#endif
}  // namespace detail

}  // namespace patchdyn::kernels
