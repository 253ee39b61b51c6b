#pragma once

#include "exosim/mb/model.hpp"

namespace exosim::mb {

inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

struct BodyFrame {
  double angle = 0.0;
  double c = 1.0, s = 0.0;  // cos/sin of angle
  Vec2 origin = Vec2::Zero();
  double omega = 0.0;       // valid after a velocity pass
  Vec2 v_origin = Vec2::Zero();

  Vec2 to_world(const Vec2& local) const {
    return origin + Vec2(c * local.x() - s * local.y(), s * local.x() + c * local.y());
  }
  Vec2 rotate(const Vec2& local) const {
    return Vec2(c * local.x() - s * local.y(), s * local.x() + c * local.y());
  }
  // velocity of the body-fixed point currently at world position p
  Vec2 velocity_at(const Vec2& p) const { return v_origin + omega * rot90(p - origin); }
};

// Forward-kinematics scratch for one simulation instance.
class KinCache {
 public:
  void update_positions(const ModelTopology& model, const VecX& q);
  void update(const ModelTopology& model, const VecX& q, const VecX& qdot);

  const BodyFrame& body(int seg) const { return frames_[static_cast<std::size_t>(seg)]; }
  // world anchor point of segment's inboard joint
  const Vec2& joint_anchor(int seg) const { return anchors_[static_cast<std::size_t>(seg)]; }

  Vec2 point_world(const ModelTopology& model, int seg, const Vec2& local) const {
    (void)model;
    return frames_[static_cast<std::size_t>(seg)].to_world(local);
  }
  Vec2 point_velocity(const ModelTopology& model, int seg, const Vec2& local) const {
    (void)model;
    const BodyFrame& f = frames_[static_cast<std::size_t>(seg)];
    return f.velocity_at(f.to_world(local));
  }

  // Q += J_point^T * world_force, J from the ancestor chain of `seg`.
  void accumulate_point_force(const ModelTopology& model, int seg, const Vec2& point_world,
                              const Vec2& force, VecX& Q) const;

 private:
  std::vector<BodyFrame> frames_;
  std::vector<Vec2> anchors_;
};

// Chain-walk evaluation of one attached point under an arbitrary coordinate
// vector; used by finite-difference moment arms so perturbed and unperturbed
// lengths come from the identical code path.
Vec2 point_world_of(const ModelTopology& model, const VecX& q, int seg, const Vec2& local);

// Spec-level convenience: world position, world velocity, frame angle.
struct PointKinematics {
  Vec2 position;
  Vec2 velocity;
  double angle;
};
PointKinematics point_kinematics(const ModelTopology& model, const VecX& q, const VecX& qdot,
                                 const std::string& segment, const std::string& point_name);

}  // namespace exosim::mb
