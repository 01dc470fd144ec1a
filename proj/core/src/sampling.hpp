#pragma once

#include "oising/markovian.hpp"

namespace oising::detail {

/// Appends one sample of a product-basis rho to `out` and checks the bounds.
void record_sample(EvolutionSeries& out, double t, const CMatrix& rho,
                   const SpectralDecomposition& spec, const EvolutionOptions& options, int n_qubits);

}  // namespace oising::detail
