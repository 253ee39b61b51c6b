#pragma once

#include <functional>

#include "exosim/mb/dynamics.hpp"
#include "exosim/mb/model.hpp"

namespace exosim::mb {

using AppliedForceFn = std::function<void(const VecX& q, const VecX& qdot, double t, VecX& Q)>;

// One semi-implicit Euler step: qdot += dt*qddot, then q += dt*qdot. Joint
// limits enter as one-sided penalty torques on the applied side. Throws
// SimulationDiverged when the new state is non-finite.
State step(const ModelTopology& model, const State& state, const AppliedForceFn& applied_fn,
           double dt);

// In-place variant with caller-owned scratch for the hot loop.
void step_inplace(const ModelTopology& model, State& state, const AppliedForceFn& applied_fn,
                  double dt, DynScratch& scratch, VecX& Q_scratch);

}  // namespace exosim::mb
