#include "vrpdecomp/instance.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vrpdecomp/bitset.hpp"
#include "vrpdecomp/errors.hpp"

namespace vrpdecomp {

namespace {

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool integral(double v) { return std::floor(v) == v && std::abs(v) < 1e9; }

Scaled euclid_tenths(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  if (integral(dx) && integral(dy)) {
    const auto ix = static_cast<std::int64_t>(dx);
    const auto iy = static_cast<std::int64_t>(dy);
    return isqrt(100 * (ix * ix + iy * iy));
  }
  return truncate_to_tenths(std::sqrt(dx * dx + dy * dy));
}

Scaled to_scaled(double v, int line) {
  const double s = v * kScale;
  const double r = std::round(s);
  if (std::abs(s - r) > 1e-6) throw ParseError(line, "value has more than one decimal: " + std::to_string(v));
  return static_cast<Scaled>(r);
}

std::string format_scaled(Scaled v) {
  if (v % kScale == 0) return std::to_string(v / kScale);
  std::ostringstream os;
  os << (v < 0 ? "-" : "") << std::llabs(v) / kScale << '.' << std::llabs(v) % kScale;
  return os.str();
}

std::string format_coord(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

}  // namespace

Scaled truncate_to_tenths(double distance) {
  // The epsilon absorbs representation error on values like 0.3 * 10.
  return static_cast<Scaled>(std::floor(distance * kScale + 1e-9));
}

Instance Instance::from_sites(std::string name, int vehicles, int capacity, std::vector<Site> sites) {
  if (sites.size() < 2) throw std::invalid_argument("instance needs a depot and at least one customer");
  Instance in;
  in.name_ = std::move(name);
  in.n_ = static_cast<int>(sites.size()) - 1;
  in.vehicles_ = vehicles;
  in.capacity_ = capacity;
  const int nv = in.n_ + 2;
  // Site index of each vertex: both depot copies map to site 0.
  auto site_of = [&](int v) { return v == in.n_ + 1 ? 0 : v; };

  in.demand_.resize(nv);
  in.ready_.resize(nv);
  in.due_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    const Site& s = sites[site_of(v)];
    const bool depot = v == 0 || v == in.n_ + 1;
    in.demand_[v] = depot ? 0 : s.demand;
    in.ready_[v] = s.ready;
    in.due_[v] = s.due;
  }
  in.cost_.assign(static_cast<std::size_t>(nv) * nv, 0);
  in.travel_.assign(static_cast<std::size_t>(nv) * nv, 0);
  in.present_.assign(static_cast<std::size_t>(nv) * nv, 0);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (i == j || j == 0 || i == in.n_ + 1) continue;
      const Scaled dist = euclid_tenths(sites[site_of(i)].at, sites[site_of(j)].at);
      in.present_[in.idx(i, j)] = 1;
      in.cost_[in.idx(i, j)] = dist;
      in.travel_[in.idx(i, j)] = dist + sites[site_of(i)].service;
    }
  }
  in.sites_ = std::move(sites);
  in.validate();
  return in;
}

Instance Instance::from_matrices(std::string name, int vehicles, int capacity, std::vector<int> demand,
                                 std::vector<Scaled> ready, std::vector<Scaled> due,
                                 std::vector<std::vector<Scaled>> cost,
                                 std::vector<std::vector<Scaled>> travel,
                                 std::vector<std::vector<bool>> present) {
  Instance in;
  in.name_ = std::move(name);
  const int nv = static_cast<int>(demand.size());
  if (nv < 3) throw std::invalid_argument("instance needs a depot pair and at least one customer");
  in.n_ = nv - 2;
  in.vehicles_ = vehicles;
  in.capacity_ = capacity;
  in.demand_ = std::move(demand);
  in.ready_ = std::move(ready);
  in.due_ = std::move(due);
  in.cost_.assign(static_cast<std::size_t>(nv) * nv, 0);
  in.travel_.assign(static_cast<std::size_t>(nv) * nv, 0);
  in.present_.assign(static_cast<std::size_t>(nv) * nv, 0);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (i == j || j == 0 || i == nv - 1 || !present[i][j]) continue;
      in.present_[in.idx(i, j)] = 1;
      in.cost_[in.idx(i, j)] = cost[i][j];
      in.travel_[in.idx(i, j)] = travel[i][j];
    }
  }
  in.validate();
  return in;
}

void Instance::validate() const {
  if (n_ < 1) throw std::invalid_argument("instance has no customers");
  if (n_ >= SmallBitset::kCapacity) throw std::invalid_argument("at most 127 customers are supported");
  if (capacity_ <= 0) throw std::invalid_argument("capacity must be positive");
  if (vehicles_ <= 0) throw std::invalid_argument("vehicle count must be positive");
  if (demand_[0] != 0 || demand_[n_ + 1] != 0) throw std::invalid_argument("depot demand must be zero");
  if (ready_[0] != ready_[n_ + 1] || due_[0] != due_[n_ + 1])
    throw std::invalid_argument("source and sink windows must agree");
  for (int v = 1; v <= n_; ++v) {
    // Labels and DAG layers are ordered by load, which must strictly grow.
    if (demand_[v] <= 0) throw std::invalid_argument("customer " + std::to_string(v) + " has non-positive demand");
    if (ready_[v] > due_[v]) throw std::invalid_argument("customer " + std::to_string(v) + " has an empty window");
  }
  for (std::size_t k = 0; k < cost_.size(); ++k) {
    if (cost_[k] < 0 || travel_[k] < 0) throw std::invalid_argument("negative cost or travel time");
  }
}

int Instance::total_demand() const { return std::accumulate(demand_.begin(), demand_.end(), 0); }

Instance Instance::subset(int n) const {
  if (sites_.empty()) throw std::logic_error("subset requires a site-based instance");
  if (n < 1 || n > n_) {
    throw std::out_of_range("requested " + std::to_string(n) + " customers but instance has " + std::to_string(n_));
  }
  if (n == n_) return *this;
  std::vector<Site> kept(sites_.begin(), sites_.begin() + n + 1);
  return from_sites(name_ + "-" + std::to_string(n), vehicles_, capacity_, std::move(kept));
}

Instance parse_solomon(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::string name;
  auto next_nonblank = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto numbers = [&](const std::string& text, std::size_t expected) {
    std::istringstream ss(text);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(lineno, "non-numeric field '" + tok + "'");
      out.push_back(v);
    }
    if (out.size() != expected) {
      throw ParseError(lineno, "expected " + std::to_string(expected) + " fields, found " + std::to_string(out.size()));
    }
    return out;
  };

  if (!next_nonblank(line)) throw ParseError(lineno, "empty input");
  {
    std::istringstream ss(line);
    ss >> name;
  }
  if (!next_nonblank(line) || line.find("VEHICLE") == std::string::npos)
    throw ParseError(lineno, "expected VEHICLE section");
  if (!next_nonblank(line) || line.find("NUMBER") == std::string::npos || line.find("CAPACITY") == std::string::npos)
    throw ParseError(lineno, "expected NUMBER/CAPACITY header");
  if (!next_nonblank(line)) throw ParseError(lineno, "missing vehicle data");
  const auto veh = numbers(line, 2);
  const int vehicles = static_cast<int>(veh[0]);
  const int capacity = static_cast<int>(veh[1]);
  if (vehicles <= 0) throw ParseError(lineno, "vehicle count must be positive");
  if (capacity <= 0) throw ParseError(lineno, "capacity must be positive");
  if (!next_nonblank(line) || line.find("CUSTOMER") == std::string::npos)
    throw ParseError(lineno, "expected CUSTOMER section");
  if (!next_nonblank(line) || line.find("CUST") == std::string::npos)
    throw ParseError(lineno, "expected customer table header");

  std::vector<Instance::Site> sites;
  while (next_nonblank(line)) {
    const auto f = numbers(line, 7);
    if (static_cast<std::size_t>(f[0]) != sites.size())
      throw ParseError(lineno, "customer numbers must be consecutive from 0");
    Instance::Site s;
    s.at = {f[1], f[2]};
    s.demand = static_cast<int>(f[3]);
    if (static_cast<double>(s.demand) != f[3]) throw ParseError(lineno, "demand must be an integer");
    if (sites.empty() && s.demand != 0) throw ParseError(lineno, "depot demand must be zero");
    if (!sites.empty() && s.demand <= 0) throw ParseError(lineno, "customer demand must be positive");
    s.ready = to_scaled(f[4], lineno);
    s.due = to_scaled(f[5], lineno);
    s.service = to_scaled(f[6], lineno);
    if (s.ready > s.due) throw ParseError(lineno, "ready time after due date");
    sites.push_back(s);
  }
  if (sites.size() < 2) throw ParseError(lineno, "instance needs at least one customer");
  if (sites.size() > static_cast<std::size_t>(SmallBitset::kCapacity - 1))
    throw ParseError(lineno, "too many customers");
  return Instance::from_sites(name, vehicles, capacity, std::move(sites));
}

Instance parse_solomon_text(const std::string& text) {
  std::istringstream in(text);
  return parse_solomon(in);
}

Instance load_solomon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return parse_solomon(in);
}

std::string to_solomon(const Instance& instance) {
  if (instance.sites().empty()) throw std::logic_error("only site-based instances can be serialized");
  std::ostringstream os;
  os << instance.name() << "\n\nVEHICLE\nNUMBER     CAPACITY\n";
  os << std::setw(5) << instance.vehicles() << std::setw(13) << instance.capacity() << "\n\n";
  os << "CUSTOMER\nCUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";
  for (std::size_t k = 0; k < instance.sites().size(); ++k) {
    const auto& s = instance.sites()[k];
    os << std::setw(5) << k << std::setw(11) << format_coord(s.at.x) << std::setw(11) << format_coord(s.at.y)
       << std::setw(11) << s.demand << std::setw(11) << format_scaled(s.ready) << std::setw(11)
       << format_scaled(s.due) << std::setw(11) << format_scaled(s.service) << "\n";
  }
  return os.str();
}

Instance builtin_example() {
  constexpr int nv = 5;  // source, 1, 2, 3, sink
  std::vector<std::vector<Scaled>> cost(nv, std::vector<Scaled>(nv, 0));
  std::vector<std::vector<bool>> present(nv, std::vector<bool>(nv, false));
  auto edge = [&](int a, int b, int w) {
    // Both depot copies share the depot's edges.
    auto put = [&](int i, int j) {
      cost[i][j] = static_cast<Scaled>(w) * kScale;
      present[i][j] = true;
    };
    if (a == 0) {
      put(0, b);
      put(b, nv - 1);
    } else {
      put(a, b);
      put(b, a);
    }
  };
  edge(0, 1, 5);
  edge(0, 2, 10);
  edge(0, 3, 5);
  edge(1, 2, 10);
  edge(2, 3, 10);
  present[0][nv - 1] = true;  // empty route
  const std::vector<Scaled> ready{0, 50, 250, 50, 0};
  const std::vector<Scaled> due{600, 400, 500, 400, 600};
  return Instance::from_matrices("EXAMPLE-3", 2, 3, {0, 1, 1, 1, 0}, ready, due, cost, cost, present);
}

}  // namespace vrpdecomp
