#include "hcrawl/sim/webgraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hcrawl/error.hpp"

namespace hcrawl::sim {

NodeIndex Webgraph::add_node(std::string name, double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("node " + name + ": r must lie in [0, 1]");
  }
  if (index_.contains(name)) throw DomainError("duplicate node " + name);
  const NodeIndex n = names_.size();
  index_.emplace(name, n);
  names_.push_back(std::move(name));
  r_.push_back(r);
  out_.emplace_back();
  return n;
}

void Webgraph::add_edge(NodeIndex from, NodeIndex to) {
  if (from >= node_count() || to >= node_count()) throw LookupError("edge endpoint out of range");
  auto& succ = out_[from];
  if (std::find(succ.begin(), succ.end(), to) != succ.end()) return;
  succ.push_back(to);
  ++edges_;
}

void Webgraph::add_edge(std::string_view from, std::string_view to) {
  add_edge(index_of(from), index_of(to));
}

NodeIndex Webgraph::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) throw LookupError("unknown node " + std::string(name));
  return it->second;
}

bool Webgraph::has_edge(NodeIndex from, NodeIndex to) const {
  const auto& succ = out_.at(from);
  return std::find(succ.begin(), succ.end(), to) != succ.end();
}

std::vector<std::pair<NodeIndex, NodeIndex>> Webgraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(edges_);
  for (NodeIndex n = 0; n < out_.size(); ++n) {
    for (NodeIndex s : out_[n]) out.emplace_back(n, s);
  }
  return out;
}

Webgraph parse_graph(std::istream& in) {
  Webgraph g;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind.front() == '#') continue;
    std::string a;
    std::string b;
    if (!(fields >> a >> b)) throw ParseError("graph: expected two fields after '" + kind + "'", line_offset);
    std::string extra;
    if (fields >> extra) throw ParseError("graph: trailing data", line_offset);
    try {
      if (kind == "node") {
        double r = 0.0;
        const auto [ptr, ec] = std::from_chars(b.data(), b.data() + b.size(), r);
        if (ec != std::errc{} || ptr != b.data() + b.size()) {
          throw ParseError("graph: bad r value '" + b + "'", line_offset);
        }
        g.add_node(a, r);
      } else if (kind == "edge") {
        g.add_edge(a, b);
      } else {
        throw ParseError("graph: unknown record '" + kind + "'", line_offset);
      }
    } catch (const DomainError& e) {
      throw ParseError(std::string("graph: ") + e.what(), line_offset);
    } catch (const LookupError& e) {
      throw ParseError(std::string("graph: ") + e.what(), line_offset);
    }
  }
  return g;
}

Webgraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Webgraph& g) {
  out << std::setprecision(17);
  for (NodeIndex n = 0; n < g.node_count(); ++n) out << "node " << g.name(n) << ' ' << g.r(n) << '\n';
  for (const auto& [from, to] : g.edges()) out << "edge " << g.name(from) << ' ' << g.name(to) << '\n';
}

double window_mean(std::span<const double> values, std::size_t m) {
  if (values.empty()) throw DomainError("h_m: empty path");
  if (m == 0) throw DomainError("h_m: m must be positive");
  const std::size_t k = std::min(m, values.size());
  double sum = 0.0;
  for (std::size_t i = values.size() - k; i < values.size(); ++i) sum += values[i];
  return sum / static_cast<double>(k);
}

double h_m(std::span<const NodeIndex> path, const Webgraph& g, std::size_t m) {
  std::vector<double> values;
  values.reserve(path.size());
  for (NodeIndex n : path) values.push_back(g.r(n));
  return window_mean(values, m);
}

}  // namespace hcrawl::sim
