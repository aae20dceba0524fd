#include "holoq/kick.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace holoq {

std::vector<Complex> PolygonLoop::vertices() const {
  if (m < 3) throw std::invalid_argument("PolygonLoop: m must be >= 3");
  std::vector<Complex> v;
  v.reserve(m);
  for (int k = 0; k < m; ++k)
    v.push_back(center + std::polar(radius, 2 * std::numbers::pi * k / m + vertex_offset));
  return v;
}

std::vector<Complex> PolygonLoop::kick_positions() const {
  std::vector<Complex> v = vertices();
  if (start_at_origin) {
    const Complex first = v.front();
    for (auto& z : v) z -= first;
  }
  return v;
}

std::string to_string(KickConvention c) {
  return c == KickConvention::MKicks ? "m_kicks" : "m_plus_one_kicks";
}

Operator kicked_evolution(const FockSpace& space, const PolygonLoop& polygon,
                          const KickSchedule& schedule) {
  if (schedule.total_time <= 0) throw std::invalid_argument("KickSchedule: T must be > 0");
  std::vector<Complex> pos = polygon.kick_positions();
  if (schedule.convention == KickConvention::MPlusOneKicks) pos.push_back(pos.front());

  double reach = 0;
  for (Complex p : pos) reach = std::max(reach, std::abs(p));
  if (reach > space.cutoff / 4.0)
    warn("kicked_evolution: kick positions reach " + std::to_string(reach) +
         ", beyond the cutoff/4 truncation guard");

  const double dt = schedule.dt(polygon.m);
  const Operator ukerr = kerr_evolution(space, {schedule.coupling, {}}, dt);
  const long dim = space.total_dim();
  Matrix u = Matrix::Identity(dim, dim);
  for (Complex p : pos) {  // first kick rightmost
    const Matrix d = displacer(space, 0, p).mat;
    u = d * ukerr.mat * d.adjoint() * u;
  }
  return {space, u};
}

DeviationReport deviation_table(const FockSpace& space, const PolygonLoop& shape,
                                const KickSchedule& schedule, const std::vector<int>& m_list,
                                int reference_m) {
  for (int m : m_list)
    if (reference_m < m)
      throw std::invalid_argument("deviation_table: reference_m must be at least every m");
  DeviationReport rep;
  rep.m_values = m_list;
  rep.reference_m = reference_m;

  auto block_abs = [&](int m) {
    PolygonLoop poly = shape;
    poly.m = m;
    const Operator u = kicked_evolution(space, poly, schedule);
    const Matrix p = project_block(u, CodeBlock::qubit());
    return std::array<double, 4>{std::abs(p(0, 0)), std::abs(p(0, 1)), std::abs(p(1, 0)),
                                 std::abs(p(1, 1))};
  };

  const auto ref = block_abs(reference_m);
  rep.reference_abs = ref;
  for (int row = 0; row < 4; ++row) {
    rep.percent[row].reserve(m_list.size());
    rep.flagged[row].reserve(m_list.size());
  }
  for (int m : m_list) {
    const auto val = block_abs(m);
    for (int row = 0; row < 4; ++row) {
      if (ref[row] < 1e-12) {
        rep.percent[row].push_back(0);
        rep.flagged[row].push_back(true);
      } else {
        rep.percent[row].push_back(100.0 * std::abs(val[row] - ref[row]) / ref[row]);
        rep.flagged[row].push_back(false);
      }
    }
  }
  return rep;
}

const std::array<std::array<double, 4>, 4>& paper_deviation_table() {
  static const std::array<std::array<double, 4>, 4> table{{
      {0.2419, 0.0595, 0.0149, 0.0099},
      {0.9119, 0.2260, 0.0558, 0.0186},
      {0.9119, 0.2260, 0.0558, 0.0186},
      {1.6763, 0.4061, 0.0760, 0.0269},
  }};
  return table;
}

const std::array<int, 4>& paper_table_m_values() {
  static const std::array<int, 4> ms{5, 10, 20, 26};
  return ms;
}

KickCalibration convention_calibration(const FockSpace& space, double total_time, double coupling,
                                       double radius) {
  const auto& target = paper_deviation_table();
  const auto& ms = paper_table_m_values();
  const std::vector<int> m_list(ms.begin(), ms.end());

  KickCalibration out;
  double best_total = std::numeric_limits<double>::infinity();
  for (KickConvention conv : {KickConvention::MKicks, KickConvention::MPlusOneKicks}) {
    for (bool origin : {true, false}) {
      PolygonLoop shape;
      shape.radius = radius;
      shape.start_at_origin = origin;
      KickSchedule sched{total_time, coupling, conv};
      const DeviationReport rep = deviation_table(space, shape, sched, m_list, 100);
      double total = 0, worst = 0;
      for (int row = 0; row < 4; ++row)
        for (size_t k = 0; k < m_list.size(); ++k) {
          const double rel =
              std::abs(rep.percent[row][k] - target[row][k]) / target[row][k];
          total += rel;
          worst = std::max(worst, rel);
        }
      out.combo_total_error[to_string(conv) + (origin ? "/origin" : "/lambda1")] = total;
      if (total < best_total) {
        best_total = total;
        out.convention = conv;
        out.start_at_origin = origin;
        out.total_rel_error = total;
        out.max_rel_error = worst;
      }
    }
  }
  return out;
}

}  // namespace holoq
