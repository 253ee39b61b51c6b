#pragma once

#include <Eigen/Dense>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "exosim/core/error.hpp"

namespace exosim::mb {

using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

enum class JointKind { kRevolute, kPlanarFree };

struct NamedPoint {
  std::string name;
  Vec2 local = Vec2::Zero();
};

struct SegmentDef {
  std::string name;
  double mass = 0.0;
  double inertia_zz = 0.0;        // about the center of mass
  Vec2 com_offset = Vec2::Zero();  // in the segment (parent-joint) frame
  double length = 0.0;             // inboard joint to outboard joint origin
  std::vector<NamedPoint> attached_points;
};

struct JointLimits {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

struct JointDef {
  std::string name;
  std::string parent;  // segment name, or "world"/"" for a root joint
  std::string child;
  JointKind kind = JointKind::kRevolute;
  Vec2 anchor = Vec2::Zero();  // in parent frame (world frame for roots)
  JointLimits limits;
  double passive_stiffness = 0.0;  // restoring toward q = 0, revolute only
  double passive_damping = 0.0;
};

struct ContactPointDef {
  std::string segment;
  Vec2 local = Vec2::Zero();
  double normal_stiffness = 5.0e4;  // N/m
  double normal_damping = 500.0;    // N*s/m
  double friction = 0.9;
  int segment_index = -1;  // resolved by the builder
};

// Immutable articulated-forest description. Segments are stored in
// topological order; segment i is attached to parent_index[i] (-1 for a
// root) by joints[i]. Planar-free joints are restricted to roots: the
// coordinate triple is (x, y, rotation) of the child frame, x/y measured in
// the world frame from the joint anchor.
class ModelTopology {
 public:
  std::vector<SegmentDef> segments;
  std::vector<JointDef> joints;  // joints[i] is the inboard joint of segments[i]
  std::vector<ContactPointDef> contact_points;
  Vec2 gravity{0.0, -9.81};
  double tangential_damping = 500.0;      // N*s/m, contact friction model
  double joint_limit_stiffness = 200.0;   // N*m/rad one-sided penalty

  int n_segments() const { return static_cast<int>(segments.size()); }
  int n_dof() const { return n_dof_; }

  int parent_of(int seg) const { return parent_index_[seg]; }
  int dof_offset(int seg) const { return dof_offset_[seg]; }
  int dof_count(int seg) const {
    return joints[static_cast<std::size_t>(seg)].kind == JointKind::kPlanarFree ? 3 : 1;
  }
  // effective rotational inertia (point masses regularized to keep M SPD)
  double inertia_eff(int seg) const { return inertia_eff_[seg]; }

  int segment_index(const std::string& name) const;
  int joint_index(const std::string& name) const;  // same as segment index of its child
  const Vec2& point_local(int seg, const std::string& point_name) const;
  bool has_point(int seg, const std::string& point_name) const;

  // joints between the root and `seg`, root first
  const std::vector<int>& ancestor_chain(int seg) const { return ancestors_[seg]; }

  // one label per generalized coordinate, e.g. "hip_r" or "pelvis_x"
  const std::vector<std::string>& coordinate_names() const { return coord_names_; }

  // indices of single-dof (revolute) coordinates, in dof order
  const std::vector<int>& revolute_dofs() const { return revolute_dofs_; }

 private:
  friend class TopologyBuilder;
  int n_dof_ = 0;
  std::vector<int> parent_index_;
  std::vector<int> dof_offset_;
  std::vector<double> inertia_eff_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<std::string> coord_names_;
  std::vector<int> revolute_dofs_;
  std::map<std::string, int> segment_by_name_;
  std::map<std::string, int> joint_by_name_;
};

class TopologyBuilder {
 public:
  TopologyBuilder& gravity(const Vec2& g) {
    model_.gravity = g;
    return *this;
  }
  TopologyBuilder& add_segment(SegmentDef seg) {
    pending_segments_.push_back(std::move(seg));
    return *this;
  }
  TopologyBuilder& add_joint(JointDef joint) {
    pending_joints_.push_back(std::move(joint));
    return *this;
  }
  TopologyBuilder& add_contact(ContactPointDef cp) {
    model_.contact_points.push_back(std::move(cp));
    return *this;
  }
  TopologyBuilder& tangential_damping(double v) {
    model_.tangential_damping = v;
    return *this;
  }

  // Validates the forest and produces the finalized topology.
  ModelTopology build();

 private:
  ModelTopology model_;
  std::vector<SegmentDef> pending_segments_;
  std::vector<JointDef> pending_joints_;
};

struct State {
  VecX q;
  VecX qdot;
  double time = 0.0;

  static State zero(const ModelTopology& model) {
    State s;
    s.q = VecX::Zero(model.n_dof());
    s.qdot = VecX::Zero(model.n_dof());
    return s;
  }
};

void check_dimension(const ModelTopology& model, const VecX& v, const char* what);

}  // namespace exosim::mb
