#pragma once

#include <map>
#include <string>

#include "finsler/metric.hpp"
#include "finsler/tensor.hpp"

namespace finsler::oracle {

enum class MetricTag { BG3, BG4 };

struct Fixture {
  Tensor value;
  /// The printed expression is known to disagree with the derivation.
  bool erroneous = false;
  std::string note;
};

using FixtureSet = std::map<std::string, Fixture>;

/// Published closed forms evaluated literally at y, for comparison against
/// the coefficient-based pipeline. Scalars are order-0 tensors.
///
/// Both metrics provide: A, A_i, A_ij_formula, A_ij_matrix, det_A_ij, A_star,
/// A_inv, A_jkm, g, g_inv, C. BG3 adds D and A_inv_compact; BG4 adds the
/// block entries p, q, r, s, a, b, c.
///
/// Throws HyperplaneSingularity when some y^i = 0 (the formulas divide by it).
FixtureSet golden_fixtures(MetricTag tag, const Direction& y);

}  // namespace finsler::oracle
