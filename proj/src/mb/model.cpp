#include "exosim/mb/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace exosim::mb {

namespace {
constexpr double kPointMassInertiaEps = 1e-9;  // kg*m^2

bool is_world(const std::string& name) { return name.empty() || name == "world"; }
}  // namespace

ModelTopology TopologyBuilder::build() {
  if (pending_segments_.empty()) throw InvalidArgument("topology: no segments");

  std::map<std::string, int> seg_id;
  for (const auto& seg : pending_segments_) {
    if (seg.name.empty()) throw InvalidArgument("topology: unnamed segment");
    if (seg_id.count(seg.name)) throw InvalidArgument("topology: duplicate segment " + seg.name);
    if (seg.mass < 0 || seg.inertia_zz < 0 || seg.length < 0)
      throw InvalidArgument("topology: negative mass/inertia/length on " + seg.name);
    std::set<std::string> point_names;
    for (const auto& p : seg.attached_points)
      if (!point_names.insert(p.name).second)
        throw InvalidArgument("topology: duplicate point " + p.name + " on " + seg.name);
    seg_id[seg.name] = static_cast<int>(seg_id.size());
  }

  if (pending_joints_.size() != pending_segments_.size())
    throw InvalidArgument("topology: every segment needs exactly one inboard joint (" +
                          std::to_string(pending_joints_.size()) + " joints, " +
                          std::to_string(pending_segments_.size()) + " segments)");

  // child segment -> joint
  std::vector<int> joint_of(pending_segments_.size(), -1);
  for (std::size_t j = 0; j < pending_joints_.size(); ++j) {
    const JointDef& joint = pending_joints_[j];
    if (joint.limits.lower > joint.limits.upper)
      throw InvalidArgument("topology: joint " + joint.name + " has inverted limits");
    if (joint.passive_stiffness < 0 || joint.passive_damping < 0)
      throw InvalidArgument("topology: joint " + joint.name + " has negative passive terms");
    auto child = seg_id.find(joint.child);
    if (child == seg_id.end())
      throw InvalidArgument("topology: joint " + joint.name + " has unknown child " + joint.child);
    if (!is_world(joint.parent) && !seg_id.count(joint.parent))
      throw InvalidArgument("topology: joint " + joint.name + " has unknown parent " +
                            joint.parent);
    if (joint.kind == JointKind::kPlanarFree && !is_world(joint.parent))
      throw InvalidArgument("topology: planar-free joint " + joint.name +
                            " must attach to the world");
    if (joint_of[static_cast<std::size_t>(child->second)] != -1)
      throw InvalidArgument("topology: segment " + joint.child + " has two inboard joints");
    joint_of[static_cast<std::size_t>(child->second)] = static_cast<int>(j);
  }

  // Topological order from the roots; a leftover segment means a cycle.
  const int ns = static_cast<int>(pending_segments_.size());
  std::vector<int> order;
  std::vector<int> old_parent(static_cast<std::size_t>(ns), -1);
  for (int i = 0; i < ns; ++i) {
    const JointDef& joint = pending_joints_[static_cast<std::size_t>(joint_of[i])];
    old_parent[static_cast<std::size_t>(i)] = is_world(joint.parent) ? -1 : seg_id[joint.parent];
  }
  std::vector<bool> placed(static_cast<std::size_t>(ns), false);
  for (int pass = 0; pass < ns && static_cast<int>(order.size()) < ns; ++pass) {
    for (int i = 0; i < ns; ++i) {
      if (placed[static_cast<std::size_t>(i)]) continue;
      int p = old_parent[static_cast<std::size_t>(i)];
      if (p == -1 || placed[static_cast<std::size_t>(p)]) {
        placed[static_cast<std::size_t>(i)] = true;
        order.push_back(i);
      }
    }
  }
  if (static_cast<int>(order.size()) != ns)
    throw InvalidArgument("topology: joint graph has a cycle");

  ModelTopology& m = model_;
  std::vector<int> new_index(static_cast<std::size_t>(ns), -1);
  for (int k = 0; k < ns; ++k) new_index[static_cast<std::size_t>(order[k])] = k;

  m.segments.resize(static_cast<std::size_t>(ns));
  m.joints.resize(static_cast<std::size_t>(ns));
  m.parent_index_.resize(static_cast<std::size_t>(ns));
  m.dof_offset_.resize(static_cast<std::size_t>(ns));
  m.inertia_eff_.resize(static_cast<std::size_t>(ns));
  m.ancestors_.resize(static_cast<std::size_t>(ns));

  int dof = 0;
  for (int k = 0; k < ns; ++k) {
    const int old = order[static_cast<std::size_t>(k)];
    m.segments[static_cast<std::size_t>(k)] = pending_segments_[static_cast<std::size_t>(old)];
    m.joints[static_cast<std::size_t>(k)] =
        pending_joints_[static_cast<std::size_t>(joint_of[static_cast<std::size_t>(old)])];
    const int op = old_parent[static_cast<std::size_t>(old)];
    m.parent_index_[static_cast<std::size_t>(k)] =
        op == -1 ? -1 : new_index[static_cast<std::size_t>(op)];
    m.dof_offset_[static_cast<std::size_t>(k)] = dof;
    m.inertia_eff_[static_cast<std::size_t>(k)] =
        m.segments[static_cast<std::size_t>(k)].inertia_zz + kPointMassInertiaEps;

    const auto& joint = m.joints[static_cast<std::size_t>(k)];
    const auto& seg = m.segments[static_cast<std::size_t>(k)];
    m.segment_by_name_[seg.name] = k;
    if (m.joint_by_name_.count(joint.name))
      throw InvalidArgument("topology: duplicate joint " + joint.name);
    m.joint_by_name_[joint.name] = k;

    if (joint.kind == JointKind::kPlanarFree) {
      m.coord_names_.push_back(joint.name + "_x");
      m.coord_names_.push_back(joint.name + "_y");
      m.coord_names_.push_back(joint.name + "_rot");
      dof += 3;
    } else {
      m.revolute_dofs_.push_back(dof);
      m.coord_names_.push_back(joint.name);
      dof += 1;
    }
  }
  m.n_dof_ = dof;

  for (int k = 0; k < ns; ++k) {
    std::vector<int>& chain = m.ancestors_[static_cast<std::size_t>(k)];
    for (int s = k; s != -1; s = m.parent_index_[static_cast<std::size_t>(s)]) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());
  }

  for (auto& cp : m.contact_points) {
    auto it = m.segment_by_name_.find(cp.segment);
    if (it == m.segment_by_name_.end())
      throw InvalidArgument("topology: contact on unknown segment " + cp.segment);
    if (cp.normal_stiffness < 0 || cp.normal_damping < 0 || cp.friction < 0)
      throw InvalidArgument("topology: negative contact parameters on " + cp.segment);
    cp.segment_index = it->second;
  }

  pending_segments_.clear();
  pending_joints_.clear();
  return std::move(model_);
}

int ModelTopology::segment_index(const std::string& name) const {
  auto it = segment_by_name_.find(name);
  if (it == segment_by_name_.end()) throw NotFound("unknown segment: " + name);
  return it->second;
}

int ModelTopology::joint_index(const std::string& name) const {
  auto it = joint_by_name_.find(name);
  if (it == joint_by_name_.end()) throw NotFound("unknown joint: " + name);
  return it->second;
}

const Vec2& ModelTopology::point_local(int seg, const std::string& point_name) const {
  for (const auto& p : segments[static_cast<std::size_t>(seg)].attached_points)
    if (p.name == point_name) return p.local;
  throw NotFound("unknown point " + point_name + " on segment " +
                 segments[static_cast<std::size_t>(seg)].name);
}

bool ModelTopology::has_point(int seg, const std::string& point_name) const {
  for (const auto& p : segments[static_cast<std::size_t>(seg)].attached_points)
    if (p.name == point_name) return true;
  return false;
}

void check_dimension(const ModelTopology& model, const VecX& v, const char* what) {
  if (v.size() != model.n_dof())
    throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(v.size()) +
                          ", model has " + std::to_string(model.n_dof()) + " dof");
  if (!v.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entries");
}

}  // namespace exosim::mb
