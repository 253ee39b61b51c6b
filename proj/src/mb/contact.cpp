#include "exosim/mb/contact.hpp"

#include <algorithm>
#include <cmath>

namespace exosim::mb {

std::vector<ContactForce> contact_forces(const ModelTopology& model, const KinCache& kin,
                                         VecX& Q) {
  std::vector<ContactForce> out;
  for (std::size_t k = 0; k < model.contact_points.size(); ++k) {
    const ContactPointDef& cp = model.contact_points[k];
    const Vec2 p = kin.point_world(model, cp.segment_index, cp.local);
    if (p.y() >= 0.0) continue;
    const Vec2 v = kin.point_velocity(model, cp.segment_index, cp.local);
    const double depth = -p.y();
    const double pen_rate = -v.y();
    const double fn = std::max(0.0, cp.normal_stiffness * depth + cp.normal_damping * pen_rate);
    if (fn == 0.0) continue;
    const double ft_viscous = model.tangential_damping * v.x();
    const double ft = -std::clamp(ft_viscous, -cp.friction * fn, cp.friction * fn);
    ContactForce cf;
    cf.contact_index = static_cast<int>(k);
    cf.point = p;
    cf.force = Vec2(ft, fn);
    kin.accumulate_point_force(model, cp.segment_index, p, cf.force, Q);
    out.push_back(cf);
  }
  return out;
}

std::pair<std::vector<ContactForce>, VecX> contact_forces(const ModelTopology& model,
                                                          const VecX& q, const VecX& qdot) {
  check_dimension(model, q, "contact_forces q");
  check_dimension(model, qdot, "contact_forces qdot");
  KinCache kin;
  kin.update(model, q, qdot);
  VecX Q = VecX::Zero(model.n_dof());
  auto forces = contact_forces(model, kin, Q);
  return {std::move(forces), std::move(Q)};
}

void joint_limit_forces(const ModelTopology& model, const VecX& q, VecX& Q) {
  const double k = model.joint_limit_stiffness;
  for (int i = 0; i < model.n_segments(); ++i) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(i)];
    if (joint.kind != JointKind::kRevolute) continue;
    const int off = model.dof_offset(i);
    if (q[off] > joint.limits.upper)
      Q[off] -= k * (q[off] - joint.limits.upper);
    else if (q[off] < joint.limits.lower)
      Q[off] += k * (joint.limits.lower - q[off]);
  }
}

}  // namespace exosim::mb
