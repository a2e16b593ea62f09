#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "beamtrim/geometry.hpp"

namespace beamtrim {

/// Static 3-d tree over a point set. Queries are exact; equal distances are
/// resolved in favor of the lower point index so results match a linear scan.
class KdTree {
 public:
  struct Neighbor {
    std::size_t index;
    double squared_distance;
  };

  explicit KdTree(std::vector<Vec3> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<Vec3>& points() const { return points_; }

  /// Requires a non-empty tree.
  Neighbor nearest(const Vec3& query) const;
  /// Sorted by (distance, index). Returns min(k, size()) neighbors.
  std::vector<Neighbor> knn(const Vec3& query, std::size_t k) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int axis = -1;  // -1 for leaves
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::int32_t node, const Vec3& q, std::size_t k, std::vector<Neighbor>& heap) const;

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace beamtrim
