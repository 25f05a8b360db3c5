#pragma once

#include <cstdint>

#include "hmporo/assembly.hpp"
#include "hmporo/constitutive.hpp"
#include "hmporo/manufactured.hpp"

namespace oracle {

// Relative residual of the momentum balance -div sigma(u) + alpha grad p - f at
// (x, y, t), with every derivative of the exact fields taken by central
// differences of the point values u and p.
double momentum_residual(const hmporo::ManufacturedCase& mc, double x, double y, double t);

// Relative residual of (c0 p + alpha div u)_t - (K/mu_f) lap p - phi, same
// numerical differentiation.
double mass_residual(const hmporo::ManufacturedCase& mc, double x, double y, double t);

// Largest residual of either balance over `count` random interior points and times.
double worst_firewall_residual(const hmporo::ManufacturedCase& mc, int count, std::uint32_t seed);

// Relative error of central differences of the stored energy against stress(),
// maximized over `count` random strains with entries in [-1, 1].
double energy_gradient_error(const hmporo::ConstitutiveLaw& law, int count, std::uint32_t seed);

struct MonotoneSample {
  int violations = 0;          // pairs with (N(a) - N(b)) : (a - b) < 0
  double monotone_min = 0.0;   // min (N(a) - N(b)) : (a - b) / |a - b|^2
  double coercive_min = 0.0;   // min N(e) : e / |e|^2
  double lipschitz_max = 0.0;  // max |N(a) - N(b)| / |a - b|
};

MonotoneSample sample_n_tensor(const hmporo::ConstitutiveLaw& law, int count, std::uint32_t seed);

// Largest |dev_scalar(strain) - closed form| / max(1, closed form) over random (x, y, t).
double test1_dev_mismatch(const hmporo::ManufacturedCase& mc, int count, std::uint32_t seed);

// Largest relative violation of the kappa identities over random (lambda, alpha, c0).
double kappa_identity_error(int count, std::uint32_t seed);

// Largest roundtrip error of (p, q) -> (xi, eta) -> (p, q) and back, relative
// to the largest of the four quantities involved.
double roundtrip_error(int count, std::uint32_t seed);

struct OracleGap {
  double matrix = 0.0;    // row-relative entry gap
  double rhs = 0.0;       // per field block
  double solution = 0.0;  // sparse solve against the dense LU solve, per field block
};

// One Picard system per case, with reproducible random previous state and
// frozen iterate, compared against the dense assembly. theta = 0 compares the
// monolithic system and both decoupled subsystems.
OracleGap compare_with_oracle(int n, hmporo::CaseId id, hmporo::LawId law, int theta, hmporo::FlowBoundary flow);

}  // namespace oracle
