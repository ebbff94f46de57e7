#pragma once

// Meshing of the fundamental piece: sample the domain on a grid, integrate
// the minimal map along a spanning tree, triangulate, extend by the symmetry
// group, and run the geometric verification contracts.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dihedral/dccw.hpp"
#include "dihedral/de.hpp"
#include "dihedral/dks.hpp"
#include "dihedral/threads.hpp"
#include "dihedral/weierstrass.hpp"

namespace dihedral::mesh {

enum class DomainKind { upper_half_plane, quarter_torus };

struct FundamentalDomain {
  DomainKind kind = DomainKind::upper_half_plane;
  double x0 = -1.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  std::vector<cplx> punctures;
  cplx base{0.0, 0.5};
  // positions splitting the boundary into symmetry pieces (real-axis
  // punctures for the half plane; the two edge punctures for the torus)
  std::vector<double> real_splits;
  double left_split = 0.0;  // quarter torus: Im of the left-edge puncture
};

// ---------------------------------------------------------------------------
// domain factories (truncation box: all finite branch points with margin 2)

inline FundamentalDomain domain_for(const de::Params& p) {
  FundamentalDomain d;
  d.kind = DomainKind::upper_half_plane;
  const double r = p.b + 2.0;
  d.x0 = -r;
  d.x1 = r;
  d.y0 = 0.0;
  d.y1 = r;
  for (double q : {-p.b, -p.a, -1.0, 0.0, 1.0, p.a, p.b})
    d.punctures.push_back(cplx(q, 0.0));
  for (const cplx& q : d.punctures) d.real_splits.push_back(q.real());
  d.base = cplx(0.5, 0.4 * r);
  return d;
}

inline FundamentalDomain domain_for(const dccw::Params& p) {
  FundamentalDomain d;
  d.kind = DomainKind::upper_half_plane;
  const double r = p.c + 2.0;
  d.x0 = -r;
  d.x1 = r;
  d.y0 = 0.0;
  d.y1 = r;
  for (double q : {-p.c, -p.a, -1.0, 1.0, p.a, p.c})
    d.punctures.push_back(cplx(q, 0.0));
  for (const cplx& q : d.punctures) d.real_splits.push_back(q.real());
  d.base = cplx(0.0, 0.4 * r);
  return d;
}

inline FundamentalDomain domain_for(const dks::Params& p) {
  FundamentalDomain d;
  d.kind = DomainKind::quarter_torus;
  d.x0 = 0.0;
  d.x1 = 0.5;
  d.y0 = 0.0;
  d.y1 = 0.5 * p.tau.im_tau;
  d.punctures.push_back(cplx(0.5 - p.a, 0.0));
  d.punctures.push_back(cplx(0.0, 0.5 * p.tau.im_tau - p.c));
  d.real_splits.push_back(0.5 - p.a);
  d.left_split = 0.5 * p.tau.im_tau - p.c;
  d.base = cplx(0.26, 0.55 * d.y1);
  return d;
}

// ---------------------------------------------------------------------------

struct GridNode {
  cplx z;
  bool alive = false;
  int parent = -1;  // spanning-tree parent (node id), -1 for base/unreached
  bool reached = false;
};

struct DomainGrid {
  int res = 8;
  double dx = 0.0, dy = 0.0;
  int nx = 9, ny = 9;  // nodes per side
  double puncture_radius = 0.0;
  std::vector<GridNode> nodes;
  std::vector<int> bfs_order;  // reached nodes, parents before children
  int base_id = -1;

  int id(int ix, int iy) const { return iy * nx + ix; }
  int alive_count() const {
    int c = 0;
    for (const auto& n : nodes) c += n.alive ? 1 : 0;
    return c;
  }
  int tree_edge_count() const {
    return static_cast<int>(bfs_order.size()) - 1;
  }
};

namespace detail {

inline double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

inline double point_rect_distance(cplx p, double x0, double x1, double y0,
                                  double y1) {
  const double cx = std::clamp(p.real(), x0, x1);
  const double cy = std::clamp(p.imag(), y0, y1);
  return std::abs(p - cplx(cx, cy));
}

}  // namespace detail

// Grid over the domain box minus puncture disks, and a BFS spanning tree
// from the base whose edges keep clear of every puncture.
inline DomainGrid sample_domain(const FundamentalDomain& dom, int resolution,
                                double puncture_radius) {
  if (resolution < 8)
    throw std::invalid_argument("sample_domain: resolution must be >= 8");
  for (std::size_t i = 0; i < dom.punctures.size(); ++i)
    for (std::size_t j = i + 1; j < dom.punctures.size(); ++j)
      if (std::abs(dom.punctures[i] - dom.punctures[j]) <
          2.0 * puncture_radius)
        throw std::invalid_argument("sample_domain: puncture disks overlap");

  DomainGrid g;
  g.res = resolution;
  g.puncture_radius = puncture_radius;
  g.nx = g.ny = resolution + 1;
  g.dx = (dom.x1 - dom.x0) / resolution;
  g.dy = (dom.y1 - dom.y0) / resolution;
  g.nodes.resize(g.nx * g.ny);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      GridNode& n = g.nodes[g.id(ix, iy)];
      n.z = cplx(dom.x0 + ix * g.dx, dom.y0 + iy * g.dy);
      n.alive = true;
      for (const cplx& p : dom.punctures)
        if (std::abs(n.z - p) < puncture_radius) n.alive = false;
    }

  // base node: nearest alive node to the requested base point
  double best = 1e300;
  for (int i = 0; i < g.nx * g.ny; ++i)
    if (g.nodes[i].alive && std::abs(g.nodes[i].z - dom.base) < best) {
      best = std::abs(g.nodes[i].z - dom.base);
      g.base_id = i;
    }
  if (g.base_id < 0)
    throw std::runtime_error("sample_domain: no admissible base node");

  auto edge_ok = [&](int u, int v) {
    for (const cplx& p : dom.punctures)
      if (detail::point_segment_distance(p, g.nodes[u].z, g.nodes[v].z) <
          puncture_radius)
        return false;
    return true;
  };

  std::vector<int> queue{g.base_id};
  g.nodes[g.base_id].reached = true;
  g.bfs_order.push_back(g.base_id);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    const int ix = u % g.nx, iy = u / g.nx;
    const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1},
                          {ix, iy - 1}};
    for (const auto& [jx, jy] : nb) {
      if (jx < 0 || jx >= g.nx || jy < 0 || jy >= g.ny) continue;
      const int v = g.id(jx, jy);
      if (!g.nodes[v].alive || g.nodes[v].reached) continue;
      if (!edge_ok(u, v)) continue;
      g.nodes[v].reached = true;
      g.nodes[v].parent = u;
      queue.push_back(v);
      g.bfs_order.push_back(v);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

struct BoundaryEdge {
  int v0, v1;
  std::string tag;
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary;
  std::vector<Vec3> normals;  // per-vertex unit normal (Gauss map)
  std::vector<cplx> params;   // parameter-plane position per vertex

  double diameter() const {
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (const Vec3& v : vertices)
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
    return vertices.empty() ? 0.0 : norm(hi - lo);
  }
};

struct BuildReport {
  double max_closure_gap = 0.0;  // period-freeness over non-tree edges
  int closure_samples = 0;
};

// boundary tag from the parameter position of an edge midpoint
inline std::string boundary_tag(const FundamentalDomain& dom, cplx mid,
                                double tol) {
  const bool at_y0 = std::abs(mid.imag() - dom.y0) < tol;
  const bool at_y1 = std::abs(mid.imag() - dom.y1) < tol;
  const bool at_x0 = std::abs(mid.real() - dom.x0) < tol;
  const bool at_x1 = std::abs(mid.real() - dom.x1) < tol;
  if (dom.kind == DomainKind::upper_half_plane) {
    if (at_y0) {
      int k = 0;
      while (k < static_cast<int>(dom.real_splits.size()) &&
             mid.real() > dom.real_splits[k])
        ++k;
      return "v" + std::to_string(k);
    }
    return "cut";  // truncation box sides
  }
  if (at_y0) return mid.real() < dom.real_splits[0] ? "dl" : "dr";
  if (at_y1) return "u";
  if (at_x1) return "r";
  if (at_x0) return mid.imag() < dom.left_split ? "ld" : "lu";
  return "collar";  // puncture exclusion boundary
}

inline Vec3 normal_from_integrands(const CTriple& v) {
  cplx g;
  if (std::abs(v.a) <= std::abs(v.b))
    g = v.c != cplx(0.0, 0.0) ? v.a / v.c : cplx(0.0, 0.0);
  else
    g = v.c / v.b;
  const double m2 = std::norm(g);
  if (!std::isfinite(m2)) return {0.0, 0.0, 1.0};
  const double d = 1.0 + m2;
  return {2.0 * g.real() / d, 2.0 * g.imag() / d, (m2 - 1.0) / d};
}

// Vertex positions by integrating the omega forms along the spanning tree;
// the torus bracket log is accumulated per node the same way. Edge integrals
// are independent and run in parallel; accumulation is a cheap serial sweep.
inline SurfaceMesh build_fundamental_piece(const WeierstrassData& data,
                                           const FundamentalDomain& dom,
                                           const DomainGrid& grid,
                                           quad::Tolerance tol = {1e-9, 1e-9},
                                           BuildReport* report = nullptr) {
  const auto* torus = std::get_if<TorusWeierstrass>(&data);
  const int n_nodes = static_cast<int>(grid.nodes.size());

  // bracket log per node (torus only)
  std::vector<cplx> node_log(n_nodes, cplx(0.0, 0.0));
  if (torus) {
    std::vector<cplx> incr(n_nodes, cplx(0.0, 0.0));
    parallel_for(static_cast<int>(grid.bfs_order.size()), [&](int k) {
      const int v = grid.bfs_order[k];
      const int u = grid.nodes[v].parent;
      if (u < 0) return;
      incr[v] =
          bracket_log_increment(torus->gdh, grid.nodes[u].z, grid.nodes[v].z);
    });
    // base: carry the branch from the form's base up and over to the mesh
    // base, clear of the boundary punctures
    BracketTransport bt(torus->gdh);
    const cplx zb = grid.nodes[grid.base_id].z;
    bt.advance_to(torus->gdh.bracket_base() + cplx(0.0, zb.imag()));
    node_log[grid.base_id] = bt.log_at(zb);
    for (int v : grid.bfs_order) {
      const int u = grid.nodes[v].parent;
      if (u >= 0) node_log[v] = node_log[u] + incr[v];
    }
  }

  // edge displacements
  std::vector<Vec3> disp(n_nodes, Vec3{0.0, 0.0, 0.0});
  std::vector<CTriple> point_vals(n_nodes);
  auto integrands_at = [&](cplx z, cplx blog) -> CTriple {
    if (torus)
      return {torus->gdh.eval(z, blog), torus->inv_gdh.eval(z, blog),
              torus->dh.eval(z)};
    const auto& h = std::get<HalfPlaneWeierstrass>(data);
    return {h.gdh.eval(z), h.inv_gdh.eval(z), h.dh.eval(z)};
  };
  auto edge_integral = [&](int u, int v) -> Vec3 {
    CTriple I;
    if (torus) {
      I = integrate_torus_segment(*torus, grid.nodes[u].z, grid.nodes[v].z,
                                  node_log[u], tol);
    } else {
      FormEvaluator ev(data);
      I = ev.integrate_triple(grid.nodes[u].z, grid.nodes[v].z, tol);
    }
    const OmegaTriple w = omega_from_integrands(I.a, I.b, I.c);
    return {w.w1.real(), w.w2.real(), w.w3.real()};
  };
  parallel_for(static_cast<int>(grid.bfs_order.size()), [&](int k) {
    const int v = grid.bfs_order[k];
    const int u = grid.nodes[v].parent;
    if (u >= 0) disp[v] = edge_integral(u, v);
    point_vals[v] = integrands_at(grid.nodes[v].z, node_log[v]);
  });

  // positions by tree accumulation
  std::vector<Vec3> pos(n_nodes, Vec3{0.0, 0.0, 0.0});
  for (int v : grid.bfs_order) {
    const int u = grid.nodes[v].parent;
    if (u >= 0) pos[v] = pos[u] + disp[v];
  }

  // period-freeness check over a sample of non-tree grid edges
  if (report) {
    auto clear_of_punctures = [&](int u, int v) {
      for (const cplx& p : dom.punctures)
        if (detail::point_segment_distance(p, grid.nodes[u].z,
                                           grid.nodes[v].z) <
            grid.puncture_radius)
          return false;
      return true;
    };
    std::vector<std::pair<int, int>> extra;
    for (int iy = 0; iy < grid.ny && static_cast<int>(extra.size()) < 200;
         ++iy)
      for (int ix = 0; ix + 1 < grid.nx; ++ix) {
        const int u = grid.id(ix, iy), v = grid.id(ix + 1, iy);
        if (grid.nodes[u].reached && grid.nodes[v].reached &&
            grid.nodes[v].parent != u && grid.nodes[u].parent != v &&
            clear_of_punctures(u, v))
          extra.emplace_back(u, v);
      }
    std::mutex m;
    parallel_for(static_cast<int>(extra.size()), [&](int k) {
      const auto [u, v] = extra[k];
      const Vec3 d = edge_integral(u, v);
      const double gap = norm(pos[u] + d - pos[v]);
      std::lock_guard<std::mutex> lock(m);
      report->max_closure_gap = std::max(report->max_closure_gap, gap);
      ++report->closure_samples;
    });
  }

  // compact the mesh
  SurfaceMesh mesh;
  std::vector<int> vid(n_nodes, -1);
  auto use_node = [&](int i) {
    if (vid[i] < 0) {
      vid[i] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(pos[i]);
      mesh.params.push_back(grid.nodes[i].z);
      mesh.normals.push_back(normal_from_integrands(point_vals[i]));
    }
    return vid[i];
  };

  const double prad_tol = 0.25 * std::min(grid.dx, grid.dy);
  for (int iy = 0; iy + 1 < grid.ny; ++iy)
    for (int ix = 0; ix + 1 < grid.nx; ++ix) {
      const int c00 = grid.id(ix, iy), c10 = grid.id(ix + 1, iy);
      const int c01 = grid.id(ix, iy + 1), c11 = grid.id(ix + 1, iy + 1);
      bool ok = grid.nodes[c00].reached && grid.nodes[c10].reached &&
                grid.nodes[c01].reached && grid.nodes[c11].reached;
      if (!ok) continue;
      // drop cells touching a puncture disk
      for (const cplx& p : dom.punctures) {
        if (detail::point_rect_distance(p, grid.nodes[c00].z.real(),
                                        grid.nodes[c11].z.real(),
                                        grid.nodes[c00].z.imag(),
                                        grid.nodes[c11].z.imag()) <
            prad_tol) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const int v00 = use_node(c00), v10 = use_node(c10);
      const int v01 = use_node(c01), v11 = use_node(c11);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }

  // boundary edges: triangle edges used exactly once
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_use[{a, b}];
    }
  const double tagtol = 0.25 * std::min(grid.dx, grid.dy);
  for (const auto& [e, cnt] : edge_use)
    if (cnt == 1) {
      const cplx mid = 0.5 * (mesh.params[e.first] + mesh.params[e.second]);
      mesh.boundary.push_back(
          {e.first, e.second, boundary_tag(dom, mid, tagtol)});
    }
  return mesh;
}

// ---------------------------------------------------------------------------
// symmetry extension

struct Isometry {
  std::array<std::array<double, 3>, 3> R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  Vec3 t{0.0, 0.0, 0.0};

  Vec3 apply(const Vec3& p) const {
    return {R[0][0] * p[0] + R[0][1] * p[1] + R[0][2] * p[2] + t[0],
            R[1][0] * p[0] + R[1][1] * p[1] + R[1][2] * p[2] + t[1],
            R[2][0] * p[0] + R[2][1] * p[1] + R[2][2] * p[2] + t[2]};
  }
  Vec3 apply_linear(const Vec3& p) const {
    return {R[0][0] * p[0] + R[0][1] * p[1] + R[0][2] * p[2],
            R[1][0] * p[0] + R[1][1] * p[1] + R[1][2] * p[2],
            R[2][0] * p[0] + R[2][1] * p[1] + R[2][2] * p[2]};
  }
  double det() const {
    return R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) -
           R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
           R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
  }
  Isometry compose(const Isometry& o) const {  // this after o
    Isometry out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        out.R[i][j] = 0.0;
        for (int k = 0; k < 3; ++k) out.R[i][j] += R[i][k] * o.R[k][j];
      }
    out.t = apply(o.t);
    return out;
  }
};

// reflection across the vertical plane {p : n . p = d}, n = (-sin a, cos a, 0)
inline Isometry vertical_plane_reflection(double angle, double offset) {
  const double nx = -std::sin(angle), ny = std::cos(angle);
  Isometry iso;
  iso.R = {{{1 - 2 * nx * nx, -2 * nx * ny, 0.0},
            {-2 * nx * ny, 1 - 2 * ny * ny, 0.0},
            {0.0, 0.0, 1.0}}};
  iso.t = {2 * offset * nx, 2 * offset * ny, 0.0};
  return iso;
}

inline Isometry horizontal_plane_reflection(double z0) {
  Isometry iso;
  iso.R = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -1.0}}};
  iso.t = {0.0, 0.0, 2.0 * z0};
  return iso;
}

// The largest dihedral symmetry data of a solved configuration: two vertical
// plane families (angle 0 and -alpha*pi as realized), order n for alpha=1/n,
// the infinity marker n = 0 for the alpha = 0 translation group.
struct SymmetryGroup {
  int order_n = 1;
  double alpha = 0.0;
  bool horizontal_reflection = false;
  double angle0 = 0.0, offset0 = 0.0;
  double angle1 = 0.0, offset1 = 0.0;
  double horizontal_z = 0.0;
  Vec3 translation{0.0, 0.0, 0.0};  // alpha = 0 period
};

inline std::vector<Isometry> group_elements(const SymmetryGroup& g,
                                            int translation_copies = 1) {
  const Isometry r0 = vertical_plane_reflection(g.angle0, g.offset0);
  std::vector<Isometry> out;
  if (g.order_n == 0) {
    // dihedral limit: translation lattice generated by r1 . r0
    const Isometry r1 = vertical_plane_reflection(g.angle1, g.offset1);
    const Isometry tr = r1.compose(r0);
    std::vector<Isometry> powers{Isometry{}};
    Isometry fwd, bwd;
    for (int k = 1; k <= translation_copies; ++k) {
      fwd = k == 1 ? tr : tr.compose(fwd);
      powers.push_back(fwd);
      // inverse translation
      Isometry inv = fwd;
      inv.t = {-fwd.t[0], -fwd.t[1], -fwd.t[2]};
      powers.push_back(inv);
    }
    for (const auto& p : powers) {
      out.push_back(p);
      out.push_back(p.compose(r0));
    }
  } else {
    const Isometry r1 = vertical_plane_reflection(g.angle1, g.offset1);
    // closure of the two reflections: the dihedral group of order 2n
    auto key = [](const Isometry& i) {
      std::array<long long, 12> k{};
      int q = 0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          k[q++] = std::llround(i.R[r][c] * 1e9);
      for (int c = 0; c < 3; ++c) k[q++] = std::llround(i.t[c] * 1e9);
      return k;
    };
    std::set<std::array<long long, 12>> seen;
    out.push_back(Isometry{});
    seen.insert(key(out[0]));
    for (std::size_t i = 0; i < out.size() &&
                            out.size() < 4u * g.order_n + 4u; ++i) {
      for (const Isometry* gen : {&r0, &r1}) {
        const Isometry cand = gen->compose(out[i]);
        if (seen.insert(key(cand)).second) out.push_back(cand);
      }
    }
  }
  if (g.horizontal_reflection) {
    const Isometry h = horizontal_plane_reflection(g.horizontal_z);
    const std::size_t base_count = out.size();
    for (std::size_t i = 0; i < base_count; ++i)
      out.push_back(h.compose(out[i]));
  }
  return out;
}

struct ExtendReport {
  double max_weld_gap = 0.0;
  int welded_pairs = 0;
};

// Union of the group images with coincident vertices welded by spatial
// hashing; the tolerance follows the mesh diameter so the operation commutes
// with the scaling covariance.
inline SurfaceMesh extend_by_symmetry(const SurfaceMesh& mesh,
                                      const std::vector<Isometry>& elements,
                                      double weld_tol_rel = 1e-6,
                                      ExtendReport* report = nullptr) {
  SurfaceMesh out;
  const double wtol = std::max(weld_tol_rel * mesh.diameter(), 1e-300);
  std::map<std::array<long long, 3>, std::vector<int>> buckets;
  auto cell_of = [&](const Vec3& p) {
    return std::array<long long, 3>{static_cast<long long>(std::floor(p[0] / wtol)),
                                    static_cast<long long>(std::floor(p[1] / wtol)),
                                    static_cast<long long>(std::floor(p[2] / wtol))};
  };
  auto find_or_add = [&](const Vec3& p, const Vec3& nrm, cplx par) {
    const auto c = cell_of(p);
    for (long long ddx = -1; ddx <= 1; ++ddx)
      for (long long ddy = -1; ddy <= 1; ++ddy)
        for (long long ddz = -1; ddz <= 1; ++ddz) {
          const auto it =
              buckets.find({c[0] + ddx, c[1] + ddy, c[2] + ddz});
          if (it == buckets.end()) continue;
          for (int idx : it->second) {
            const double gap = norm(out.vertices[idx] - p);
            if (gap <= wtol) {
              if (report) {
                report->max_weld_gap = std::max(report->max_weld_gap, gap);
                ++report->welded_pairs;
              }
              return idx;
            }
          }
        }
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(p);
    out.normals.push_back(nrm);
    out.params.push_back(par);
    buckets[c].push_back(idx);
    return idx;
  };

  for (const Isometry& iso : elements) {
    const bool flip = iso.det() < 0.0;
    std::vector<int> map(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      Vec3 n = iso.apply_linear(mesh.normals[i]);
      if (flip) n = -1.0 * n;  // reflections reverse orientation
      map[i] = find_or_add(iso.apply(mesh.vertices[i]), n, mesh.params[i]);
    }
    for (const auto& t : mesh.triangles) {
      std::array<int, 3> tri = {map[t[0]], map[t[1]], map[t[2]]};
      if (flip) std::swap(tri[1], tri[2]);
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
      out.triangles.push_back(tri);
    }
    for (const auto& e : mesh.boundary)
      out.boundary.push_back({map[e.v0], map[e.v1], e.tag});
  }
  return out;
}

// ---------------------------------------------------------------------------
// verification reports

struct PlaneCheck {
  std::string tag;
  int vertex_count = 0;
  bool vertical = true;
  double fitted_angle = 0.0;   // vertical planes: direction angle mod pi
  double fitted_offset = 0.0;  // n . p for vertical, z for horizontal
  double max_dev_fitted = 0.0;
  double max_dev_nominal = 0.0;
};

// Fit each tagged boundary family against its nominal orientation. Vertical
// nominal angles are tag -> angle (mod pi); horizontal tags are checked for
// z-flatness.
inline std::vector<PlaneCheck> verify_plane_alignment(
    const SurfaceMesh& mesh, const std::map<std::string, double>& vertical,
    const std::set<std::string>& horizontal) {
  std::map<std::string, std::vector<int>> groups;
  for (const auto& e : mesh.boundary) {
    groups[e.tag].push_back(e.v0);
    groups[e.tag].push_back(e.v1);
  }
  std::vector<PlaneCheck> out;
  for (auto& [tag, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const bool is_v = vertical.count(tag) > 0;
    if (!is_v && horizontal.count(tag) == 0) continue;
    PlaneCheck pc;
    pc.tag = tag;
    pc.vertex_count = static_cast<int>(ids.size());
    pc.vertical = is_v;
    if (is_v) {
      // best-fit vertical plane: principal direction of the xy scatter
      double mx = 0, my = 0;
      for (int i : ids) {
        mx += mesh.vertices[i][0];
        my += mesh.vertices[i][1];
      }
      mx /= ids.size();
      my /= ids.size();
      double sxx = 0, sxy = 0, syy = 0;
      for (int i : ids) {
        const double dx = mesh.vertices[i][0] - mx;
        const double dy = mesh.vertices[i][1] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
      }
      pc.fitted_angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
      const double na = -std::sin(pc.fitted_angle);
      const double nb = std::cos(pc.fitted_angle);
      pc.fitted_offset = na * mx + nb * my;
      for (int i : ids)
        pc.max_dev_fitted = std::max(
            pc.max_dev_fitted, std::abs(na * mesh.vertices[i][0] +
                                        nb * mesh.vertices[i][1] -
                                        pc.fitted_offset));
      const double ang = vertical.at(tag);
      const double nna = -std::sin(ang), nnb = std::cos(ang);
      const double off = nna * mx + nnb * my;
      for (int i : ids)
        pc.max_dev_nominal = std::max(
            pc.max_dev_nominal, std::abs(nna * mesh.vertices[i][0] +
                                         nnb * mesh.vertices[i][1] - off));
    } else {
      double mz = 0;
      for (int i : ids) mz += mesh.vertices[i][2];
      mz /= ids.size();
      pc.fitted_offset = mz;
      for (int i : ids)
        pc.max_dev_fitted =
            std::max(pc.max_dev_fitted, std::abs(mesh.vertices[i][2] - mz));
      pc.max_dev_nominal = pc.max_dev_fitted;
    }
    out.push_back(pc);
  }
  return out;
}

struct ConformalityReport {
  double max_conformal_residual = 0.0;  // |E - G|/E
  double max_shear_residual = 0.0;      // |F|/E
  double max_boundary_angle = 0.0;      // radians from orthogonal incidence
};

// Finite-difference first fundamental form at interior samples; at boundary
// samples the surface normal must lie inside the tagged symmetry plane.
inline ConformalityReport verify_conformality_and_orthogonality(
    const WeierstrassData& data, const FundamentalDomain& dom, int samples,
    const std::map<std::string, double>& vertical_angles,
    double puncture_clearance = 0.05, unsigned seed = 20260810) {
  ConformalityReport rep;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(dom.x0, dom.x1),
      uy(dom.y0, dom.y1);
  const double h =
      1e-4 * std::min(dom.x1 - dom.x0, dom.y1 - dom.y0);

  auto displacement = [&](cplx from, cplx to) -> Vec3 {
    FormEvaluator ev(data);
    if (std::holds_alternative<TorusWeierstrass>(data)) ev.advance(from);
    const CTriple I = ev.integrate_triple(from, to, {1e-12, 1e-12});
    const OmegaTriple w = omega_from_integrands(I.a, I.b, I.c);
    return {w.w1.real(), w.w2.real(), w.w3.real()};
  };

  int found = 0;
  while (found < samples) {
    const cplx z(ux(rng), uy(rng));
    bool ok = z.imag() > dom.y0 + puncture_clearance &&
              z.imag() < dom.y1 - puncture_clearance &&
              z.real() > dom.x0 + puncture_clearance &&
              z.real() < dom.x1 - puncture_clearance;
    for (const cplx& p : dom.punctures)
      ok = ok && std::abs(z - p) > puncture_clearance;
    if (!ok) continue;
    ++found;
    const Vec3 fx = (1.0 / (2.0 * h)) *
                    displacement(z - cplx(h, 0.0), z + cplx(h, 0.0));
    const Vec3 fy = (1.0 / (2.0 * h)) *
                    displacement(z - cplx(0.0, h), z + cplx(0.0, h));
    const double E = dot(fx, fx), G = dot(fy, fy), F = dot(fx, fy);
    rep.max_conformal_residual =
        std::max(rep.max_conformal_residual, std::abs(E - G) / E);
    rep.max_shear_residual =
        std::max(rep.max_shear_residual, std::abs(F) / E);
  }

  // boundary samples: the unit normal lies in the symmetry plane, so its
  // projection on the plane normal vanishes (orthogonal incidence)
  FormEvaluator ev(data);
  for (const auto& [tag, angle] : vertical_angles) {
    const Vec3 npl{-std::sin(angle), std::cos(angle), 0.0};
    for (int k = 0; k < 16; ++k) {
      cplx z;
      if (dom.kind == DomainKind::upper_half_plane) {
        // a point on the real axis inside the tagged interval
        int idx = tag.size() > 1 ? std::stoi(tag.substr(1)) : 0;
        const int nsplit = static_cast<int>(dom.real_splits.size());
        double lo = idx == 0 ? dom.x0 : dom.real_splits[idx - 1];
        double hi = idx >= nsplit ? dom.x1 : dom.real_splits[idx];
        lo = std::max(lo, dom.x0);
        hi = std::min(hi, dom.x1);
        const double t = (k + 1.0) / 17.0;
        z = cplx(lo + t * (hi - lo), 0.0);
        bool clear = true;
        for (const cplx& p : dom.punctures)
          clear = clear && std::abs(z - p) > puncture_clearance;
        if (!clear) continue;
      } else {
        // quarter torus: dl/dr on the bottom edge, u on the top
        const double t = (k + 1.0) / 17.0;
        if (tag == "dl")
          z = cplx(t * dom.real_splits[0], 0.0);
        else if (tag == "dr")
          z = cplx(dom.real_splits[0] +
                       t * (dom.x1 - dom.real_splits[0]),
                   0.0);
        else if (tag == "u")
          z = cplx(t * dom.x1, dom.y1);
        else
          continue;
        bool clear = true;
        for (const cplx& p : dom.punctures)
          clear = clear && std::abs(z - p) > puncture_clearance;
        if (!clear) continue;
        ev.advance(cplx(z.real(), 0.5 * dom.y1));
        ev.advance(z);
      }
      const Vec3 ns = ev.unit_normal(z);
      rep.max_boundary_angle = std::max(
          rep.max_boundary_angle, std::asin(std::min(1.0, std::abs(dot(ns, npl)))));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// covariance helpers (tests and verification suites)

inline WeierstrassData scale_dh(WeierstrassData data, double s) {
  if (auto* h = std::get_if<HalfPlaneWeierstrass>(&data)) {
    h->gdh.scale_by(s);
    h->inv_gdh.scale_by(s);
    h->dh.scale_by(s);
  } else {
    auto& t = std::get<TorusWeierstrass>(data);
    t.gdh.scale_by(s);
    t.inv_gdh.scale_by(s);
    t.dh.scale_by(s);
  }
  return data;
}

inline WeierstrassData rotate_gauss(WeierstrassData data, double angle) {
  const cplx ph = std::exp(cplx(0.0, angle));
  if (auto* h = std::get_if<HalfPlaneWeierstrass>(&data)) {
    h->gdh.scale_by(ph);
    h->inv_gdh.scale_by(1.0 / ph);
  } else {
    auto& t = std::get<TorusWeierstrass>(data);
    t.gdh.scale_by(ph);
    t.inv_gdh.scale_by(1.0 / ph);
  }
  return data;
}

}  // namespace dihedral::mesh
