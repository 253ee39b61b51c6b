#pragma once

#include "exosim/mb/kinematics.hpp"
#include "exosim/mb/model.hpp"

namespace exosim::mb {

// Planar spatial vectors ordered (omega, vx, vy), all expressed at the world
// origin. Motion composition and force projection follow the usual planar
// spatial-algebra rules.
using PVec = Eigen::Vector3d;
using PMat = Eigen::Matrix3d;

// Reusable scratch so the hot loop allocates nothing.
struct DynScratch {
  KinCache kin;
  std::vector<PMat> composite;  // per segment
  std::vector<PVec> vel, acc, force;
  MatX M;
  VecX bias;
  Eigen::LLT<MatX> llt;
};

// M(q) by the composite-rigid-body method over the forest. Symmetric
// positive definite (point masses carry the epsilon-regularized inertia).
MatX mass_matrix(const ModelTopology& model, const VecX& q);
void mass_matrix(const ModelTopology& model, const VecX& q, DynScratch& scratch);

// c(q, qdot): gravity, centrifugal/Coriolis and passive joint terms, with the
// convention M*qddot + c = Q_applied.
VecX bias_forces(const ModelTopology& model, const VecX& q, const VecX& qdot);

// Q = M(q)*qddot + c(q, qdot), computed by recursive Newton-Euler.
VecX inverse_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& qddot);

// qddot solving M*qddot = applied - c.
VecX forward_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& applied);
void forward_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& applied, DynScratch& scratch, VecX& qddot);

// 0.5*qdot'M qdot + sum m g h; the energy oracle for integrator tests.
double mechanical_energy(const ModelTopology& model, const VecX& q, const VecX& qdot);

}  // namespace exosim::mb
