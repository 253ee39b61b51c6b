#pragma once

#include "exosim/mb/kinematics.hpp"
#include "exosim/mb/model.hpp"

namespace exosim::mb {

struct ContactForce {
  int contact_index = -1;
  Vec2 point = Vec2::Zero();  // world
  Vec2 force = Vec2::Zero();  // world
};

// Penalty ground contact against the plane y = 0: one-sided spring-damper
// normal force plus viscous friction clamped to the Coulomb cone. Returns the
// per-point world forces and accumulates their generalized projection into Q.
std::vector<ContactForce> contact_forces(const ModelTopology& model, const KinCache& kin,
                                         VecX& Q);

// Convenience overload allocating a fresh generalized vector.
std::pair<std::vector<ContactForce>, VecX> contact_forces(const ModelTopology& model,
                                                          const VecX& q, const VecX& qdot);

// One-sided joint-limit penalty torques, added into Q.
void joint_limit_forces(const ModelTopology& model, const VecX& q, VecX& Q);

}  // namespace exosim::mb
