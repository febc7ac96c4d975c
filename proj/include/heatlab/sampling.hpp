#pragma once

#include <random>

#include "heatlab/models.hpp"

namespace heatlab {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Vec3 random_vec(Rng& rng, double scale = 1.0);
// R diag(d) R^T with a random rotation R; coaxial draws share the rotation.
Mat3 random_rotation(Rng& rng);
SymTensor3 rotated_diag(const Mat3& R, const Vec3& d);

// Parameters drawn from the consistent region of each model.
ModelParams random_admissible(ModelKind kind, Rng& rng);

// theta in [0.5, 3]; every optional field populated with O(1) entries.
ThermalState random_state(Rng& rng);

// Overwrites the highest rate (qdot or qddot) with the model's own rate law. For GK with
// tau = 0 the flux itself is set from the constraint instead.
ThermalState drive_rates(const ModelParams& m, ThermalState s);

}  // namespace heatlab
