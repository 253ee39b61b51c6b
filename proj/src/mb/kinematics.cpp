#include "exosim/mb/kinematics.hpp"

#include <cmath>

namespace exosim::mb {

void KinCache::update_positions(const ModelTopology& model, const VecX& q) {
  const int ns = model.n_segments();
  frames_.resize(static_cast<std::size_t>(ns));
  anchors_.resize(static_cast<std::size_t>(ns));
  for (int i = 0; i < ns; ++i) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(i)];
    const int parent = model.parent_of(i);
    const int off = model.dof_offset(i);
    BodyFrame& f = frames_[static_cast<std::size_t>(i)];
    if (joint.kind == JointKind::kPlanarFree) {
      anchors_[static_cast<std::size_t>(i)] = joint.anchor;
      f.origin = joint.anchor + Vec2(q[off], q[off + 1]);
      f.angle = q[off + 2];
    } else {
      if (parent == -1) {
        anchors_[static_cast<std::size_t>(i)] = joint.anchor;
        f.origin = joint.anchor;
        f.angle = q[off];
      } else {
        const BodyFrame& pf = frames_[static_cast<std::size_t>(parent)];
        anchors_[static_cast<std::size_t>(i)] = pf.to_world(joint.anchor);
        f.origin = anchors_[static_cast<std::size_t>(i)];
        f.angle = pf.angle + q[off];
      }
    }
    f.c = std::cos(f.angle);
    f.s = std::sin(f.angle);
    f.omega = 0.0;
    f.v_origin.setZero();
  }
}

void KinCache::update(const ModelTopology& model, const VecX& q, const VecX& qdot) {
  update_positions(model, q);
  const int ns = model.n_segments();
  for (int i = 0; i < ns; ++i) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(i)];
    const int parent = model.parent_of(i);
    const int off = model.dof_offset(i);
    BodyFrame& f = frames_[static_cast<std::size_t>(i)];
    if (joint.kind == JointKind::kPlanarFree) {
      f.omega = qdot[off + 2];
      f.v_origin = Vec2(qdot[off], qdot[off + 1]);
    } else if (parent == -1) {
      f.omega = qdot[off];
      f.v_origin.setZero();  // origin is the fixed anchor
    } else {
      const BodyFrame& pf = frames_[static_cast<std::size_t>(parent)];
      f.omega = pf.omega + qdot[off];
      f.v_origin = pf.velocity_at(f.origin);
    }
  }
}

void KinCache::accumulate_point_force(const ModelTopology& model, int seg, const Vec2& point_world,
                                      const Vec2& force, VecX& Q) const {
  for (int s : model.ancestor_chain(seg)) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(s)];
    const int off = model.dof_offset(s);
    if (joint.kind == JointKind::kPlanarFree) {
      Q[off] += force.x();
      Q[off + 1] += force.y();
      Q[off + 2] += cross2(point_world - frames_[static_cast<std::size_t>(s)].origin, force);
    } else {
      Q[off] += cross2(point_world - anchors_[static_cast<std::size_t>(s)], force);
    }
  }
}

Vec2 point_world_of(const ModelTopology& model, const VecX& q, int seg, const Vec2& local) {
  double angle = 0.0;
  Vec2 origin = Vec2::Zero();
  for (int s : model.ancestor_chain(seg)) {
    const JointDef& joint = model.joints[static_cast<std::size_t>(s)];
    const int off = model.dof_offset(s);
    if (joint.kind == JointKind::kPlanarFree) {
      origin = joint.anchor + Vec2(q[off], q[off + 1]);
      angle = q[off + 2];
    } else if (model.parent_of(s) == -1) {
      origin = joint.anchor;
      angle = q[off];
    } else {
      const double c = std::cos(angle), sn = std::sin(angle);
      origin = origin + Vec2(c * joint.anchor.x() - sn * joint.anchor.y(),
                             sn * joint.anchor.x() + c * joint.anchor.y());
      angle += q[off];
    }
  }
  const double c = std::cos(angle), sn = std::sin(angle);
  return origin + Vec2(c * local.x() - sn * local.y(), sn * local.x() + c * local.y());
}

PointKinematics point_kinematics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                                 const std::string& segment, const std::string& point_name) {
  check_dimension(model, q, "point_kinematics q");
  check_dimension(model, qdot, "point_kinematics qdot");
  const int seg = model.segment_index(segment);
  const Vec2& local = model.point_local(seg, point_name);
  KinCache kin;
  kin.update(model, q, qdot);
  PointKinematics out;
  out.position = kin.point_world(model, seg, local);
  out.velocity = kin.point_velocity(model, seg, local);
  out.angle = kin.body(seg).angle;
  return out;
}

}  // namespace exosim::mb
