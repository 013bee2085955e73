// Chart atlas for the Jacobi-group homogeneous spaces and the comparison
// spaces, with the bridge transforms between presentations.
//
// Every chart is presented in real coordinates; complex coordinates are
// recorded as (re, im) slot pairs so Wirtinger calculus can be applied on
// top of the same points.
#ifndef SJG_CHARTS_HPP
#define SJG_CHARTS_HPP

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>

#include "sjg/config.hpp"
#include "sjg/jet.hpp"
#include "sjg/rng.hpp"

namespace sjg {

struct Chart {
  std::string id;
  int rdim = 0;
  std::vector<std::string> names;               // real coordinate names
  std::vector<std::pair<int, int>> cpairs;      // (re, im) slots of complex coords
  std::vector<std::string> cnames;              // complex coordinate names
  std::function<bool(std::span<const double>)> in_domain;
  std::function<std::vector<double>(Rng&)> sample;

  int cdim() const { return int(cpairs.size()); }
};

struct ChartTransform {
  std::string from, to;
  Map fwd;
  Map inv;  // null when the bridge is one-way (projections)
};

class Atlas {
 public:
  Atlas();

  const Chart& chart(const std::string& id) const;
  bool has_chart(const std::string& id) const { return charts_.count(id) != 0; }
  std::vector<std::string> chart_ids() const;

  // transform between any two charts connected in the bridge graph
  Map transform(const std::string& from, const std::string& to) const;
  bool has_transform(const std::string& from, const std::string& to) const;

  std::vector<double> apply(const std::string& from, const std::string& to,
                            std::span<const double> x) const;

 private:
  void add_chart(Chart c);
  void add_transform(const std::string& from, const std::string& to, Map fwd, Map inv);

  std::map<std::string, Chart> charts_;
  std::map<std::pair<std::string, std::string>, Map> edges_;
};

const Atlas& atlas();

// real Jacobian J(j, i) = d to_j / d from_i
Eigen::MatrixXd jacobian(const Map& m, std::span<const double> x);

// holomorphic Jacobian between complex charts, Jc(a, b) = d Z_a / d w_b
Eigen::MatrixXcd complex_jacobian(const Map& m, const Chart& from, const Chart& to,
                                  std::span<const double> x);

std::vector<double> map_apply(const Map& m, std::span<const double> x);

Map compose(const Map& first, const Map& second);  // x -> second(first(x))

// complex coordinate helpers
template <class S>
GJet<S> cx(const GJet<S>& re, const GJet<S>& im) { return re + I * im; }

}  // namespace sjg

#endif
