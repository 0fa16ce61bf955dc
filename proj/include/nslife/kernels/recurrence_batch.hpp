#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nslife/recurrence.hpp"

namespace nslife::kernels {

/// Sup of the extremal trajectory without storing it.
struct SupVerdict {
  double sup_x = 0.0;
  double sup_y = 0.0;  ///< unused for scalar recurrences
  bool diverged = false;
};

SupVerdict extremal_sup(const ScalarRecurrence& rec, std::size_t n_steps);
SupVerdict extremal_sup(const CoupledRecurrence& rec, std::size_t n_steps);

/// Batched oracles; the OpenMP versions write slot i from item i only, so
/// both produce identical output.
std::vector<SupVerdict> extremal_sup_serial(std::span<const ScalarRecurrence> recs, std::size_t n_steps);
std::vector<SupVerdict> extremal_sup_omp(std::span<const ScalarRecurrence> recs, std::size_t n_steps);
std::vector<SupVerdict> extremal_sup_serial(std::span<const CoupledRecurrence> recs, std::size_t n_steps);
std::vector<SupVerdict> extremal_sup_omp(std::span<const CoupledRecurrence> recs, std::size_t n_steps);

}  // namespace nslife::kernels
