#pragma once

// 1-nets of euclidean balls and the product nets built from them.
//
// Construction is greedy over a deterministic candidate stream: the points of
// the scaled integer lattice (1/2)Z^n inside the closed ball of radius R,
// enumerated by increasing l_2 norm and lexicographically within a shell
// (preceded by 0, which is shell 0). A candidate is accepted iff it is at
// distance >= 1 from every previously accepted point. Because both candidates
// and accepted points are half-integer, every accept/reject decision and the
// final separation are exact integer computations: with u = 2x, the test
// "dist < 1" is "|u - v|^2 <= 3".

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "netext/rng.hpp"
#include "netext/spaces.hpp"

namespace netext {

inline constexpr const char* kNetStreamVersion = "half-lattice-shell-lex/v1";

// queries fall back to a grid-bucket index at and above this point count
inline constexpr std::size_t kNearestBruteThreshold = 100000;

struct NearestResult {
  std::size_t index = 0;
  double distance = 0.0;
};

struct CoveringCheck {
  double max_distance = 0.0;
  RealVector argmax_query;
  std::uint64_t queries = 0;
};

class NetHandle {
 public:
  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  double radius() const { return radius_; }
  std::uint64_t seed() const { return seed_; }
  // certified minimum pairwise distance (exact; +inf for nets of one point)
  double separation() const { return separation_; }
  RealVector seed_point() const { return point(0); }
  const std::string& stream_version() const { return stream_version_; }

  RealVector point(std::size_t i) const;
  const std::int8_t* lattice_row(std::size_t i) const { return lattice_.data() + i * dim_; }

  // nearest net point in l_2; ties broken by lowest acceptance index
  NearestResult nearest(const RealVector& query) const;

  // exact l_2 distance between two net points (integer arithmetic under the hood)
  double point_distance(std::size_t i, std::size_t j) const;

  // max over sampled uniform ball points of the nearest-net distance
  CoveringCheck verify_covering(std::uint64_t num_queries, std::uint64_t seed) const;

  // documented quantization slack of the candidate lattice: the ball is only
  // sampled by (1/2)Z^n, whose covering radius is sqrt(n)/4
  double covering_slack() const;

  // recompute the exact minimum pairwise distance from scratch (the same
  // integer all-pairs argument used at construction)
  double recompute_separation() const;
  // exact count of point pairs at distance < 1 (must be 0 for a valid net)
  std::uint64_t count_pairs_below_one() const;

 private:
  friend NetHandle build_greedy_net(std::size_t dim, double radius, std::uint64_t seed);
  friend NetHandle load_net(const std::string& points_csv, const std::string& sidecar_json);
  friend class GridIndex;

  void finalize();

  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  double radius_ = 0.0;
  double separation_ = 0.0;
  std::uint64_t seed_ = 0;
  std::string stream_version_ = kNetStreamVersion;
  std::vector<std::int8_t> lattice_;  // row-major integer coords u = 2x
  std::shared_ptr<const class GridIndex> grid_;
};

// maximal 1-separated greedy net of the closed ball of the given radius;
// limits: 1 <= dim <= 10 and radius < 15 (packed 6-bit lattice coordinates)
NetHandle build_greedy_net(std::size_t dim, double radius, std::uint64_t seed);

NearestResult nearest_net_point(const NetHandle& net, const RealVector& query);

double verify_net_covering(const NetHandle& net, std::uint64_t num_queries, std::uint64_t seed);

// persistence: one point per row (coordinates in index order, RFC 4180) plus a
// JSON sidecar carrying dim/radius/separation/seed/stream version
void save_net(const NetHandle& net, const std::string& points_csv, const std::string& sidecar_json);
NetHandle load_net(const std::string& points_csv, const std::string& sidecar_json);

// product net N = M^(P-p0+1), indexed virtually: one component-net index per
// exponent p in {p0..P}
class ProductNet {
 public:
  ProductNet(std::shared_ptr<const NetHandle> component_net, int p0, int p_max);

  const NetHandle& component_net() const { return *net_; }
  std::shared_ptr<const NetHandle> component_net_ptr() const { return net_; }
  ProductShape shape() const { return {p0_, p_max_, net_->dim()}; }
  int p0() const { return p0_; }
  int p_max() const { return p_max_; }

  using Indices = std::vector<std::uint32_t>;

  ProductPoint materialize(const Indices& idx) const;
  // f((x_p)_p) = (M_p(x_p))_p on net points
  ProductPoint net_f(const Indices& idx) const;
  // X-side sup distance between two net points (exact per component)
  double sup_distance(const Indices& a, const Indices& b) const;
  Indices sample(RngStream& stream) const;

 private:
  void check(const Indices& idx) const;
  std::shared_ptr<const NetHandle> net_;
  int p0_;
  int p_max_;
};

}  // namespace netext
