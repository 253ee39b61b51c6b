#include "exosim/mb/dynamics.hpp"

#include <cmath>

namespace exosim::mb {

namespace {

// Planar spatial inertia of a body about the world origin.
PMat spatial_inertia(double mass, double inertia_zz, const Vec2& com_world) {
  PMat I;
  const double cx = com_world.x(), cy = com_world.y();
  I << inertia_zz + mass * (cx * cx + cy * cy), -mass * cy, mass * cx,  //
      -mass * cy, mass, 0.0,                                            //
      mass * cx, 0.0, mass;
  return I;
}

inline PVec crm(const PVec& v, const PVec& m) {
  // crm([w,vx,vy]) = [[0,0,0],[vy,0,-w],[-vx,w,0]]
  return PVec(0.0, v[2] * m[0] - v[0] * m[2], -v[1] * m[0] + v[0] * m[1]);
}

inline PVec crf(const PVec& v, const PVec& f) {
  // crf(v) = -crm(v)^T
  return PVec(-v[2] * f[1] + v[1] * f[2], v[0] * f[2], -v[0] * f[1]);
}

// Motion-subspace columns of segment i's inboard joint, world coordinates.
// Returns the number of columns written.
int joint_subspace(const ModelTopology& model, const KinCache& kin, int seg, PVec cols[3]) {
  const JointDef& joint = model.joints[static_cast<std::size_t>(seg)];
  if (joint.kind == JointKind::kPlanarFree) {
    const Vec2& o = kin.body(seg).origin;
    cols[0] = PVec(0.0, 1.0, 0.0);
    cols[1] = PVec(0.0, 0.0, 1.0);
    cols[2] = PVec(1.0, o.y(), -o.x());
    return 3;
  }
  const Vec2& a = kin.joint_anchor(seg);
  cols[0] = PVec(1.0, a.y(), -a.x());
  return 1;
}

void ensure_scratch(const ModelTopology& model, DynScratch& s) {
  const auto ns = static_cast<std::size_t>(model.n_segments());
  if (s.composite.size() != ns) {
    s.composite.resize(ns);
    s.vel.resize(ns);
    s.acc.resize(ns);
    s.force.resize(ns);
  }
  if (s.M.rows() != model.n_dof()) {
    s.M.resize(model.n_dof(), model.n_dof());
    s.bias.resize(model.n_dof());
  }
}

void crba(const ModelTopology& model, DynScratch& s) {
  const int ns = model.n_segments();
  for (int i = 0; i < ns; ++i) {
    const SegmentDef& seg = model.segments[static_cast<std::size_t>(i)];
    const Vec2 com = s.kin.body(i).to_world(seg.com_offset);
    s.composite[static_cast<std::size_t>(i)] =
        spatial_inertia(seg.mass, model.inertia_eff(i), com);
  }
  for (int i = ns - 1; i > 0; --i) {
    const int p = model.parent_of(i);
    if (p >= 0)
      s.composite[static_cast<std::size_t>(p)] += s.composite[static_cast<std::size_t>(i)];
  }

  s.M.setZero();
  PVec si[3], sj[3];
  for (int i = 0; i < ns; ++i) {
    const int ndi = joint_subspace(model, s.kin, i, si);
    const int offi = model.dof_offset(i);
    for (int d = 0; d < ndi; ++d) {
      const PVec F = s.composite[static_cast<std::size_t>(i)] * si[d];
      for (int e = d; e < ndi; ++e) {
        const double v = si[e].dot(F);
        s.M(offi + d, offi + e) = v;
        s.M(offi + e, offi + d) = v;
      }
      for (int j = model.parent_of(i); j != -1; j = model.parent_of(j)) {
        const int ndj = joint_subspace(model, s.kin, j, sj);
        const int offj = model.dof_offset(j);
        for (int e = 0; e < ndj; ++e) {
          const double v = sj[e].dot(F);
          s.M(offi + d, offj + e) = v;
          s.M(offj + e, offi + d) = v;
        }
      }
    }
  }
}

// RNEA with the gravity offset folded into the base acceleration.
void rnea(const ModelTopology& model, const VecX& q, const VecX& qdot, const VecX& qddot,
          DynScratch& s, VecX& Q) {
  const int ns = model.n_segments();
  const PVec a_base(0.0, -model.gravity.x(), -model.gravity.y());
  PVec cols[3];

  for (int i = 0; i < ns; ++i) {
    const int p = model.parent_of(i);
    const int off = model.dof_offset(i);
    const int nd = joint_subspace(model, s.kin, i, cols);
    PVec vJ = PVec::Zero(), aJ = PVec::Zero();
    for (int d = 0; d < nd; ++d) {
      vJ += cols[d] * qdot[off + d];
      aJ += cols[d] * qddot[off + d];
    }
    const PVec vp = p == -1 ? PVec::Zero() : s.vel[static_cast<std::size_t>(p)];
    const PVec ap = p == -1 ? a_base : s.acc[static_cast<std::size_t>(p)];
    const PVec vi = vp + vJ;
    s.vel[static_cast<std::size_t>(i)] = vi;
    s.acc[static_cast<std::size_t>(i)] = ap + aJ + crm(vi, vJ);

    const SegmentDef& seg = model.segments[static_cast<std::size_t>(i)];
    const Vec2 com = s.kin.body(i).to_world(seg.com_offset);
    const PMat I = spatial_inertia(seg.mass, model.inertia_eff(i), com);
    s.force[static_cast<std::size_t>(i)] =
        I * s.acc[static_cast<std::size_t>(i)] + crf(vi, I * vi);
  }

  for (int i = ns - 1; i >= 0; --i) {
    const int off = model.dof_offset(i);
    const int nd = joint_subspace(model, s.kin, i, cols);
    for (int d = 0; d < nd; ++d) Q[off + d] = cols[d].dot(s.force[static_cast<std::size_t>(i)]);
    const int p = model.parent_of(i);
    if (p >= 0) s.force[static_cast<std::size_t>(p)] += s.force[static_cast<std::size_t>(i)];
  }

  // passive joint elasticity/damping lives on the bias side
  for (int i = 0; i < ns; ++i) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(i)];
    if (joint.kind != JointKind::kRevolute) continue;
    if (joint.passive_stiffness == 0.0 && joint.passive_damping == 0.0) continue;
    const int off = model.dof_offset(i);
    Q[off] += joint.passive_stiffness * q[off] + joint.passive_damping * qdot[off];
  }
}

}  // namespace

void mass_matrix(const ModelTopology& model, const VecX& q, DynScratch& scratch) {
  check_dimension(model, q, "mass_matrix q");
  ensure_scratch(model, scratch);
  scratch.kin.update_positions(model, q);
  crba(model, scratch);
}

MatX mass_matrix(const ModelTopology& model, const VecX& q) {
  DynScratch scratch;
  mass_matrix(model, q, scratch);
  return scratch.M;
}

VecX inverse_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& qddot) {
  check_dimension(model, q, "inverse_dynamics q");
  check_dimension(model, qdot, "inverse_dynamics qdot");
  check_dimension(model, qddot, "inverse_dynamics qddot");
  DynScratch scratch;
  ensure_scratch(model, scratch);
  scratch.kin.update_positions(model, q);
  VecX Q(model.n_dof());
  rnea(model, q, qdot, qddot, scratch, Q);
  return Q;
}

VecX bias_forces(const ModelTopology& model, const VecX& q, const VecX& qdot) {
  check_dimension(model, q, "bias_forces q");
  check_dimension(model, qdot, "bias_forces qdot");
  DynScratch scratch;
  ensure_scratch(model, scratch);
  scratch.kin.update_positions(model, q);
  VecX Q(model.n_dof());
  rnea(model, q, qdot, VecX::Zero(model.n_dof()), scratch, Q);
  return Q;
}

void forward_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& applied, DynScratch& scratch, VecX& qddot) {
  ensure_scratch(model, scratch);
  scratch.kin.update_positions(model, q);
  crba(model, scratch);
  rnea(model, q, qdot, VecX::Zero(model.n_dof()), scratch, scratch.bias);
  scratch.llt.compute(scratch.M);
  if (scratch.llt.info() != Eigen::Success)
    throw NumericalFailure("forward_dynamics: mass matrix not positive definite at q = [" +
                           [&q] {
                             std::string s;
                             for (int i = 0; i < q.size(); ++i)
                               s += (i ? ", " : "") + std::to_string(q[i]);
                             return s;
                           }() +
                           "]");
  qddot = scratch.llt.solve(applied - scratch.bias);
}

VecX forward_dynamics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                      const VecX& applied) {
  check_dimension(model, q, "forward_dynamics q");
  check_dimension(model, qdot, "forward_dynamics qdot");
  check_dimension(model, applied, "forward_dynamics applied");
  DynScratch scratch;
  VecX qddot;
  forward_dynamics(model, q, qdot, applied, scratch, qddot);
  return qddot;
}

double mechanical_energy(const ModelTopology& model, const VecX& q, const VecX& qdot) {
  DynScratch scratch;
  mass_matrix(model, q, scratch);
  double e = 0.5 * qdot.dot(scratch.M * qdot);
  for (int i = 0; i < model.n_segments(); ++i) {
    const SegmentDef& seg = model.segments[static_cast<std::size_t>(i)];
    const Vec2 com = scratch.kin.body(i).to_world(seg.com_offset);
    e -= seg.mass * model.gravity.dot(com);
  }
  return e;
}

}  // namespace exosim::mb
