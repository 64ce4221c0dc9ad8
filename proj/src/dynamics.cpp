#include "qgossip/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgossip {

namespace {

double transmit(const QuantizerSpec& q, double x, Rng& rng) { return quantize(q, x, rng); }
Dyadic transmit(const QuantizerSpec& q, const Dyadic& x, Rng& rng) {
  return quantize_exact(q, x, rng);
}

double halve(double x) { return 0.5 * x; }
Dyadic halve(const Dyadic& x) { return x.half(); }

template <class Real>
void update_pair(Rule rule, const QuantizerSpec& q, Real& xi, Real& xj, Rng& rng) {
  if (rule == Rule::Standard) {
    const Real mid = halve(xi + xj);
    xi = mid;
    xj = mid;
    return;
  }
  const Real qi = transmit(q, xi, rng);
  const Real qj = transmit(q, xj, rng);
  switch (rule) {
    case Rule::TotallyQuantized: {
      const Real mid = halve(qi + qj);
      xi = mid;
      xj = mid;
      return;
    }
    case Rule::PartiallyQuantized: {
      const Real new_i = halve(xi) + halve(qj);
      const Real new_j = halve(xj) + halve(qi);
      xi = new_i;
      xj = new_j;
      return;
    }
    case Rule::Compensating: {
      // x_i - q_i/2 + q_j/2, with the quantized difference formed first so the
      // transfer out of j equals the transfer into i.
      const Real transfer = halve(qj - qi);
      xi = xi + transfer;
      xj = xj - transfer;
      return;
    }
    case Rule::Standard:
      break;
  }
  throw std::invalid_argument("unknown update rule");
}

template <class Real>
void step_span(Rule rule, const QuantizerSpec& q, std::span<Real> x, Edge edge, Rng& rng) {
  if (edge.i == edge.j || edge.i >= x.size() || edge.j >= x.size()) {
    throw std::out_of_range("gossip_step: edge endpoint out of range");
  }
  if (edge.i > edge.j) std::swap(edge.i, edge.j);
  update_pair(rule, q, x[edge.i], x[edge.j], rng);
}

}  // namespace

Rule parse_rule(std::string_view text) {
  if (text == "standard") return Rule::Standard;
  if (text == "totally") return Rule::TotallyQuantized;
  if (text == "partially") return Rule::PartiallyQuantized;
  if (text == "compensating") return Rule::Compensating;
  throw std::invalid_argument("unknown rule '" + std::string(text) + "'");
}

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::Standard: return "standard";
    case Rule::TotallyQuantized: return "totally";
    case Rule::PartiallyQuantized: return "partially";
    case Rule::Compensating: return "compensating";
  }
  throw std::invalid_argument("unknown update rule");
}

void gossip_step(Rule rule, const QuantizerSpec& q, std::span<double> x, Edge edge, Rng& rng) {
  step_span(rule, q, x, edge, rng);
}

void gossip_step(Rule rule, const QuantizerSpec& q, std::span<Dyadic> x, Edge edge, Rng& rng) {
  step_span(rule, q, x, edge, rng);
}

StateVector gossip_step(Rule rule, const QuantizerSpec& q, const Graph& g, const StateVector& x,
                        Edge edge, Rng& rng) {
  if (x.size() != g.n_nodes()) {
    throw std::invalid_argument("state length does not match graph size");
  }
  if (!g.has_edge(edge)) {
    throw std::invalid_argument("edge (" + std::to_string(edge.i) + "," + std::to_string(edge.j) +
                                ") is not in the graph");
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("state contains a non-finite entry");
  }
  StateVector next = x;
  gossip_step(rule, q, std::span<double>(next), edge, rng);
  return next;
}

double average(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("average of an empty state");
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

InitSpec parse_init(std::string_view text) {
  if (text.starts_with("uniform:")) {
    const std::string rest(text.substr(8));
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("init uniform needs uniform:<lo>:<hi>");
    }
    double lo = 0.0, hi = 0.0;
    try {
      std::size_t used_lo = 0, used_hi = 0;
      const std::string lo_text = rest.substr(0, colon), hi_text = rest.substr(colon + 1);
      lo = std::stod(lo_text, &used_lo);
      hi = std::stod(hi_text, &used_hi);
      if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad init bounds in '" + std::string(text) + "'");
    }
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("init uniform needs finite lo <= hi");
    }
    return InitSpec::uniform(lo, hi);
  }
  if (text.starts_with("file:")) {
    const std::string path(text.substr(5));
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open initial state file " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      for (char& c : line) {
        if (c == ',') c = ' ';
      }
      std::istringstream fields(line);
      double v = 0.0;
      while (fields >> v) values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("initial state file " + path + " is empty");
    return InitSpec::fixed(std::move(values));
  }
  throw std::invalid_argument("unknown init '" + std::string(text) + "'");
}

std::string init_name(const InitSpec& init) {
  if (init.kind == InitSpec::Kind::Uniform) {
    std::ostringstream out;
    out.precision(17);
    out << "uniform:" << init.lo << ':' << init.hi;
    return out.str();
  }
  return "values[" + std::to_string(init.values.size()) + "]";
}

StateVector make_initial_state(const InitSpec& init, std::size_t n, Rng& rng) {
  if (init.kind == InitSpec::Kind::Values) {
    if (init.values.size() != n) {
      throw std::invalid_argument("initial state has " + std::to_string(init.values.size()) +
                                  " values for " + std::to_string(n) + " nodes");
    }
    for (double v : init.values) {
      if (!std::isfinite(v)) throw std::invalid_argument("initial state is not finite");
    }
    return init.values;
  }
  StateVector x(n);
  const double width = init.hi - init.lo;
  for (double& v : x) v = init.lo + width * rng.uniform();
  return x;
}

}  // namespace qgossip
