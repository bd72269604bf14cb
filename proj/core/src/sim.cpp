#include "whittaker/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace whittaker {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> ids) {
  std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
  for (std::uint64_t id : ids) h = splitmix64(h ^ id);
  return std::mt19937_64(h);
}

namespace {

double exp_draw(std::mt19937_64& g) {
  std::exponential_distribution<double> d(1.0);
  return d(g);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Model interface for the next-reaction engine.  Sites carry stable keys:
/// streams and tie-breaking depend on keys only, which makes restrictions
/// and alternative state representations reproduce event sequences exactly.
class ChainModel {
 public:
  virtual ~ChainModel() = default;
  virtual int num_sites() const = 0;
  virtual std::pair<long, long> site_key(int site) const = 0;
  virtual double site_rate(int site) const = 0;
  virtual PathEvent apply(int site, double time) = 0;
  virtual std::vector<int> affected(int site) const = 0;
  virtual std::vector<long> state_values() const = 0;
};

struct SiteClock {
  std::mt19937_64 rng;
  double threshold = 0.0;  // next internal firing level P
  double consumed = 0.0;   // internal time T at the last rate change
  double t_last = 0.0;     // wall time of the last rate change
  double rate = 0.0;
  double fire = kInf;
};

class IndexedHeap {
 public:
  IndexedHeap(int n, const std::vector<std::pair<long, long>>& keys,
              const std::vector<double>& times)
      : keys_(keys), times_(times), pos_(n, -1) {
    for (int i = 0; i < n; ++i) {
      heap_.push_back(i);
      pos_[i] = i;
    }
    for (int i = n / 2 - 1; i >= 0; --i) sift_down(i);
  }

  bool less(int a, int b) const {
    if (times_[a] != times_[b]) return times_[a] < times_[b];
    return keys_[a] < keys_[b];
  }

  int top() const { return heap_.front(); }
  void update(int site) {
    int p = pos_[site];
    if (!sift_up(p)) sift_down(p);
  }

 private:
  bool sift_up(int p) {
    bool moved = false;
    while (p > 0) {
      int parent = (p - 1) / 2;
      if (!less(heap_[p], heap_[parent])) break;
      swap_at(p, parent);
      p = parent;
      moved = true;
    }
    return moved;
  }
  void sift_down(int p) {
    int n = static_cast<int>(heap_.size());
    while (true) {
      int l = 2 * p + 1, r = 2 * p + 2, best = p;
      if (l < n && less(heap_[l], heap_[best])) best = l;
      if (r < n && less(heap_[r], heap_[best])) best = r;
      if (best == p) break;
      swap_at(p, best);
      p = best;
    }
  }
  void swap_at(int a, int b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a]] = a;
    pos_[heap_[b]] = b;
  }
  const std::vector<std::pair<long, long>>& keys_;
  const std::vector<double>& times_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

PathRecord run_next_reaction(ChainModel& model, const StopRule& stop,
                             std::uint64_t seed, long replica) {
  int n = model.num_sites();
  std::vector<SiteClock> clocks(n);
  std::vector<std::pair<long, long>> keys(n);
  std::vector<double> fire_times(n, kInf);
  for (int s = 0; s < n; ++s) {
    keys[s] = model.site_key(s);
    clocks[s].rng = make_stream(
        seed, {static_cast<std::uint64_t>(replica),
               static_cast<std::uint64_t>(keys[s].first) + 0x100000ULL,
               static_cast<std::uint64_t>(keys[s].second) + 0x200000ULL});
    clocks[s].threshold = exp_draw(clocks[s].rng);
    clocks[s].rate = model.site_rate(s);
    clocks[s].fire = clocks[s].rate > 0
                         ? clocks[s].threshold / clocks[s].rate
                         : kInf;
    fire_times[s] = clocks[s].fire;
  }
  IndexedHeap heap(n, keys, fire_times);

  PathRecord rec;
  double t = 0.0;
  bool done = false;
  const long max_events = 200000000L;
  while (!done && static_cast<long>(rec.events.size()) < max_events) {
    int s = heap.top();
    double tf = fire_times[s];
    if (tf == kInf) {
      rec.absorbed = true;
      rec.final_time = (stop.kind == StopRule::Kind::Time) ? stop.time : t;
      done = true;
      break;
    }
    if (stop.kind == StopRule::Kind::Time && tf > stop.time) {
      rec.final_time = stop.time;
      done = true;
      break;
    }
    t = tf;
    SiteClock& c = clocks[s];
    c.consumed = c.threshold;
    c.t_last = t;
    c.threshold += exp_draw(c.rng);

    for (int a : model.affected(s)) {
      if (a == s) continue;
      SiteClock& ca = clocks[a];
      ca.consumed += ca.rate * (t - ca.t_last);
      ca.t_last = t;
    }
    PathEvent ev = model.apply(s, t);
    rec.events.push_back(ev);
    for (int a : model.affected(s)) {
      SiteClock& ca = clocks[a];
      ca.rate = model.site_rate(a);
      ca.fire = ca.rate > 0
                    ? t + (ca.threshold - ca.consumed) / ca.rate
                    : kInf;
      fire_times[a] = ca.fire;
      heap.update(a);
    }
    if (stop.kind == StopRule::Kind::CellZero && ev.cell == stop.cell &&
        ev.new_value == 0) {
      rec.final_time = t;
      done = true;
      break;
    }
  }
  if (!done) rec.final_time = t;  // event-budget exhaustion
  rec.final_values = model.state_values();
  return rec;
}

class ArrayModel : public ChainModel {
 public:
  ArrayModel(CellSet cells, AlphaSpec alpha, std::vector<long> init)
      : cells_(std::move(cells)), alpha_(std::move(alpha)),
        values_(std::move(init)) {
    for (Cell c : cells_.cells())
      beta_.push_back(alpha_.beta(c.i, c.j));
  }
  int num_sites() const override { return cells_.num_cells(); }
  std::pair<long, long> site_key(int s) const override {
    Cell c = cells_.cell(s);
    return {c.i, c.j};
  }
  double site_rate(int s) const override {
    Cell c = cells_.cell(s);
    long v = values_[s];
    int ol = cells_.ordinal_of({c.i, c.j - 1});
    int ou = cells_.ordinal_of({c.i - 1, c.j});
    long left = ol >= 0 ? values_[ol] : 0;
    long up = ou >= 0 ? values_[ou] : 0;
    long rate = (v - left) * (v - up + beta_[s]);
    return static_cast<double>(rate);
  }
  PathEvent apply(int s, double time) override {
    --values_[s];
    return {time, cells_.cell(s), values_[s]};
  }
  std::vector<int> affected(int s) const override {
    Cell c = cells_.cell(s);
    std::vector<int> out{s};
    int orr = cells_.ordinal_of({c.i, c.j + 1});
    if (orr >= 0) out.push_back(orr);
    int od = cells_.ordinal_of({c.i + 1, c.j});
    if (od >= 0) out.push_back(od);
    return out;
  }
  std::vector<long> state_values() const override { return values_; }

 private:
  CellSet cells_;
  AlphaSpec alpha_;
  std::vector<long> values_;
  std::vector<long> beta_;
};

class BoundaryModel : public ChainModel {
 public:
  BoundaryModel(int r, std::vector<long> start,
                std::function<double(int, const std::vector<long>&)> rate)
      : r_(r), values_(std::move(start)), rate_(std::move(rate)) {}
  int num_sites() const override { return r_; }
  std::pair<long, long> site_key(int s) const override { return {0, s + 1}; }
  double site_rate(int s) const override { return rate_(s, values_); }
  PathEvent apply(int s, double time) override {
    --values_[s];
    return {time, Cell{0, s + 1}, values_[s]};
  }
  std::vector<int> affected(int) const override {
    std::vector<int> all(r_);
    for (int i = 0; i < r_; ++i) all[i] = i;
    return all;
  }
  std::vector<long> state_values() const override { return values_; }

 private:
  int r_;
  std::vector<long> values_;
  std::function<double(int, const std::vector<long>&)> rate_;
};

class RModel : public ChainModel {
 public:
  RModel(int N, std::vector<long> start) : N_(N), x_(std::move(start)) {}
  int num_sites() const override { return N_; }
  std::pair<long, long> site_key(int s) const override { return {-1, s + 1}; }
  double site_rate(int s) const override {
    long rank = 0;
    for (int k = 0; k < N_; ++k)
      if (x_[k] <= x_[s]) ++rank;
    return static_cast<double>(rank);
  }
  PathEvent apply(int s, double time) override {
    ++x_[s];
    return {time, Cell{-1, s + 1}, x_[s]};
  }
  std::vector<int> affected(int) const override {
    std::vector<int> all(N_);
    for (int i = 0; i < N_; ++i) all[i] = i;
    return all;
  }
  std::vector<long> state_values() const override {
    std::vector<long> sorted = x_;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  }

 private:
  int N_;
  std::vector<long> x_;
};

// Nested-partition representation of the alpha = 0 chain; per-cell streams
// match ArrayModel's, so paths coincide event for event.
class CornerModel : public ChainModel {
 public:
  CornerModel(const Shape& lambda, long height)
      : lambda_(lambda), height_(height),
        cells_(CellSet::from_shape(lambda)),
        levels_(height, std::vector<long>(lambda.num_rows(), 0)) {}
  int num_sites() const override { return cells_.num_cells(); }
  std::pair<long, long> site_key(int s) const override {
    Cell c = cells_.cell(s);
    return {c.i, c.j};
  }
  double site_rate(int s) const override {
    Cell c = cells_.cell(s);
    long pi = value_at(c);
    if (pi == 0) return 0.0;
    long k = pi - 1;
    if (row_len(k, c.i) != c.j - 1) return 0.0;
    if (row_len_above(k, c.i) < c.j) return 0.0;
    long same = 0, open = 0;
    for (long l = 0; l <= k; ++l) {
      if (row_len(l, c.i) == c.j - 1) ++same;
      if (row_len_above(l, c.i) >= c.j) ++open;
    }
    return static_cast<double>(same * open);
  }
  PathEvent apply(int s, double time) override {
    Cell c = cells_.cell(s);
    long pi = value_at(c);
    long k = pi - 1;
    levels_[k][c.i - 1] = c.j;
    return {time, c, pi - 1};
  }
  std::vector<int> affected(int s) const override {
    Cell c = cells_.cell(s);
    std::vector<int> out{s};
    int orr = cells_.ordinal_of({c.i, c.j + 1});
    if (orr >= 0) out.push_back(orr);
    int od = cells_.ordinal_of({c.i + 1, c.j});
    if (od >= 0) out.push_back(od);
    return out;
  }
  std::vector<long> state_values() const override {
    std::vector<long> out;
    for (Cell c : cells_.cells()) out.push_back(value_at(c));
    return out;
  }

 private:
  long row_len(long level, int i) const { return levels_[level][i - 1]; }
  // mu^l_{i-1} with the mu_0 = +infinity convention, capped by lambda.
  long row_len_above(long level, int i) const {
    if (i == 1) return std::numeric_limits<long>::max();
    if (level >= height_) return lambda_.row(i - 1);
    return levels_[level][i - 2];
  }
  long value_at(Cell c) const {
    for (long l = 0; l < height_; ++l)
      if (levels_[l][c.i - 1] >= c.j) return l;
    return height_;
  }

  Shape lambda_;
  long height_;
  CellSet cells_;
  std::vector<std::vector<long>> levels_;  // level -> row lengths
};

std::vector<long> initial_values(const SimConfig& config, long replica) {
  CellSet cells = config.mu.empty()
                      ? CellSet::from_shape(config.lambda)
                      : CellSet::skew(config.lambda, config.mu);
  int provided = (config.init_values ? 1 : 0) + (config.init_all ? 1 : 0) +
                 (config.init_k_sigma ? 1 : 0);
  if (provided != 1)
    throw std::invalid_argument("simulate: exactly one initial condition");
  if (config.init_values) {
    if (static_cast<int>(config.init_values->size()) != cells.num_cells())
      throw std::invalid_argument("simulate: init size mismatch");
    PlaneArray pi(cells, *config.init_values);
    if (!validate_state(pi, config.alpha))
      throw std::invalid_argument("simulate: invalid initial state");
    return *config.init_values;
  }
  if (config.init_all) {
    PlaneArray omega = omega_array(config.alpha, cells);
    std::vector<long> v;
    for (Cell c : cells.cells())
      v.push_back(omega.at(c).value() + *config.init_all);
    return v;
  }
  if (!config.mu.empty())
    throw std::invalid_argument("simulate: K_sigma init requires the full shape");
  PlaneArray pi = sample_K(config.lambda, config.lambda.interior(),
                           config.alpha, *config.init_k_sigma, config.seed,
                           replica);
  return pi.finite_values();
}

}  // namespace

PathRecord simulate(const SimConfig& config, long replica) {
  CellSet cells = config.mu.empty()
                      ? CellSet::from_shape(config.lambda)
                      : CellSet::skew(config.lambda, config.mu);
  ArrayModel model(cells, config.alpha, initial_values(config, replica));
  return run_next_reaction(model, config.stop, config.seed, replica);
}

PathRecord simulate_boundary(
    int r, const std::vector<long>& start,
    const std::function<double(int, const std::vector<long>&)>& rate,
    const StopRule& stop, std::uint64_t seed, long replica) {
  BoundaryModel model(r, start, rate);
  return run_next_reaction(model, stop, seed, replica);
}

PathRecord simulate_M(int r, const std::vector<long>& start,
                      const StopRule& stop, std::uint64_t seed, long replica) {
  auto rate = [r](int i, const std::vector<long>& n) {
    long v = (i + 1 < r) ? n[i] * (n[i] - n[i + 1]) : n[i] * n[i];
    return static_cast<double>(v);
  };
  return simulate_boundary(r, start, rate, stop, seed, replica);
}

PathRecord simulate_R(int N, const std::vector<long>& start,
                      const StopRule& stop, std::uint64_t seed, long replica) {
  RModel model(N, start);
  return run_next_reaction(model, stop, seed, replica);
}

PathRecord simulate_corner_growth(const Shape& lambda, long init_height,
                                  const StopRule& stop, std::uint64_t seed,
                                  long replica) {
  CornerModel model(lambda, init_height);
  return run_next_reaction(model, stop, seed, replica);
}

namespace {

/// Exact draw from rational weights via an integer uniform below the
/// common-denominator total.
int exact_categorical(const std::vector<Rat>& weights, std::mt19937_64& g) {
  Int denom(1);
  for (const auto& w : weights)
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), w.get_den().get_mpz_t());
  std::vector<Int> scaled;
  Int total(0);
  for (const auto& w : weights) {
    Int s = w.get_num() * (denom / w.get_den());
    if (s < 0) throw std::invalid_argument("exact_categorical: negative weight");
    scaled.push_back(s);
    total += s;
  }
  if (total == 0)
    throw std::invalid_argument("exact_categorical: all weights zero");
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(g()));
  Int u = rng.get_z_range(total);
  Int cum(0);
  for (size_t i = 0; i < scaled.size(); ++i) {
    cum += scaled[i];
    if (u < cum) return static_cast<int>(i);
  }
  throw std::logic_error("exact_categorical: fell off the end");
}

PlaneArray sample_K_staircase(int r, const AlphaSpec& alpha,
                              const std::vector<long>& n, std::mt19937_64& g) {
  CellSet cells = CellSet::from_shape(staircase(r));
  PlaneArray pi(cells, ExtNat(0));
  CoeffEngine eng(alpha);
  std::vector<long> boundary = n;
  for (int m = r; m >= 1; --m) {
    for (int i = 1; i <= m; ++i) pi.set({i, m + 1 - i}, ExtNat(boundary[i - 1]));
    if (m == 1) break;
    // Conditional law of the next anti-diagonal given this one:
    // P(k | n) proportional to q_m(n,k) a_{m-1}(k).
    std::vector<std::vector<long>> ks;
    std::vector<Rat> weights;
    std::vector<long> k(m - 1, 0);
    while (true) {
      Rat w = q_kernel(m, alpha, boundary, k) * eng.a(m - 1, k);
      if (w != 0) {
        ks.push_back(k);
        weights.push_back(w);
      }
      int pos = 0;
      while (pos < m - 1) {
        if (k[pos] < boundary[pos]) {
          ++k[pos];
          break;
        }
        k[pos] = 0;
        ++pos;
      }
      if (pos == m - 1) break;
    }
    boundary = ks[exact_categorical(weights, g)];
  }
  return pi;
}

}  // namespace

PlaneArray sample_K(const Shape& lambda, const Shape& mu,
                    const AlphaSpec& alpha, const std::vector<long>& sigma,
                    std::uint64_t seed, long replica, long max_fiber) {
  std::mt19937_64 g = make_stream(seed, {static_cast<std::uint64_t>(replica), 0xABCDULL});
  // Staircase pairs go through the anti-diagonal conditionals (this is also
  // the only path that supports negative alpha).
  int R = lambda.num_rows();
  bool is_staircase = R >= 1 && lambda == staircase(R);
  if (is_staircase && ((R == 1 && mu.empty()) || (R >= 2 && mu == staircase(R - 1))))
    return sample_K_staircase(R, alpha, sigma, g);
  auto fiber = enumerate_fiber(lambda, mu, alpha, sigma);
  if (static_cast<long>(fiber.size()) > max_fiber)
    throw std::invalid_argument(
        "sample_K: fiber larger than the exact-enumeration limit (" +
        std::to_string(fiber.size()) + " states)");
  std::vector<Rat> weights;
  for (const auto& pi : fiber)
    weights.push_back(weight_general(lambda, mu, alpha, pi));
  return fiber[exact_categorical(weights, g)];
}

PlaneArray entrance_surrogate(const Shape& lambda, const AlphaSpec& alpha,
                              long N, double t, std::uint64_t seed,
                              long replica) {
  SimConfig cfg;
  cfg.lambda = lambda;
  cfg.alpha = alpha;
  cfg.init_all = N;
  cfg.stop = StopRule::time_limit(t);
  cfg.seed = seed;
  PathRecord rec = simulate(cfg, replica);
  return PlaneArray(CellSet::from_shape(lambda), rec.final_values);
}

std::pair<PlaneArray, PlaneArray> entrance_coupled_pair(
    const Shape& lambda, const AlphaSpec& alpha, long N1, long N2, double t,
    std::uint64_t seed, long replica) {
  if (N1 > N2) throw std::invalid_argument("entrance_coupled_pair: N1 <= N2");
  CellSet cells = CellSet::from_shape(lambda);
  PlaneArray omega = omega_array(alpha, cells);
  int nc = cells.num_cells();
  std::vector<long> lo(nc), hi(nc), beta(nc);
  for (int o = 0; o < nc; ++o) {
    Cell c = cells.cell(o);
    lo[o] = omega.at(c).value() + N1;
    hi[o] = omega.at(c).value() + N2;
    beta[o] = alpha.beta(c.i, c.j);
  }
  auto rate_of = [&](const std::vector<long>& v, int o) {
    Cell c = cells.cell(o);
    int ol = cells.ordinal_of({c.i, c.j - 1});
    int ou = cells.ordinal_of({c.i - 1, c.j});
    long left = ol >= 0 ? v[ol] : 0;
    long up = ou >= 0 ? v[ou] : 0;
    return (v[o] - left) * (v[o] - up + beta[o]);
  };
  std::mt19937_64 g = make_stream(seed, {static_cast<std::uint64_t>(replica), 0xC0DEULL});
  double now = 0.0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (true) {
    std::vector<long> cap(nc);
    long total = 0;
    for (int o = 0; o < nc; ++o) {
      cap[o] = std::max(rate_of(lo, o), rate_of(hi, o));
      total += cap[o];
    }
    if (total == 0) break;
    now += exp_draw(g) / static_cast<double>(total);
    if (now > t) break;
    std::uniform_int_distribution<long> pick(0, total - 1);
    long u = pick(g);
    int cell = 0;
    while (u >= cap[cell]) {
      u -= cap[cell];
      ++cell;
    }
    double thin = unif(g);
    // Shared uniform: whenever the upper chain jumps at an equal cell, the
    // lower one does too, preserving cellwise dominance.
    if (thin * static_cast<double>(cap[cell]) <
        static_cast<double>(rate_of(lo, cell)))
      --lo[cell];
    if (thin * static_cast<double>(cap[cell]) <
        static_cast<double>(rate_of(hi, cell)))
      --hi[cell];
    for (int o = 0; o < nc; ++o)
      if (lo[o] > hi[o])
        throw std::logic_error("entrance_coupled_pair: dominance violated");
  }
  return {PlaneArray(cells, lo), PlaneArray(cells, hi)};
}

std::vector<double> transient_probs(const SparseOperator& L, int start,
                                    double t, double tv_tol) {
  int n = L.dim;
  std::vector<double> out(n, 0.0);
  double lam = 0.0;
  for (int i = 0; i < n; ++i) lam = std::max(lam, std::abs(to_double(L.diag[i])));
  if (lam == 0.0 || t == 0.0) {
    out[start] = 1.0;
    return out;
  }
  // Uniformized DTMC P = I + L/lam, iterated against Poisson(lam t) weights.
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  std::vector<double> self(n);
  for (int i = 0; i < n; ++i) {
    self[i] = 1.0 + to_double(L.diag[i]) / lam;
    for (const auto& [j, r] : L.off[i])
      rows[i].emplace_back(j, to_double(r) / lam);
  }
  std::vector<double> v(n, 0.0), w(n, 0.0);
  v[start] = 1.0;
  double lt = lam * t;
  long kmax = static_cast<long>(lt + 12.0 * std::sqrt(lt + 1.0) + 60.0);
  double cum = 0.0;
  for (long k = 0; k <= kmax; ++k) {
    double logp = k * std::log(lt) - lt - std::lgamma(k + 1.0);
    double p = std::exp(logp);
    cum += p;
    for (int i = 0; i < n; ++i) out[i] += p * v[i];
    if (1.0 - cum < tv_tol * 0.5 && k > lt) break;
    // v <- v P (row vector times matrix)
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      w[i] += v[i] * self[i];
      for (const auto& [j, r] : rows[i]) w[j] += v[i] * r;
    }
    std::swap(v, w);
  }
  return out;
}

std::string pgm_string(const PlaneArray& pi, long maxval) {
  long width = 0, height = 0;
  for (Cell c : pi.cells().cells()) {
    width = std::max<long>(width, c.j);
    height = std::max<long>(height, c.i);
  }
  std::ostringstream os;
  os << "P2\n" << width << " " << height << "\n" << maxval << "\n";
  for (long i = 1; i <= height; ++i) {
    for (long j = 1; j <= width; ++j) {
      if (j > 1) os << " ";
      Cell c{static_cast<int>(i), static_cast<int>(j)};
      long v = pi.cells().contains(c) ? pi.at(c).value() : 0;
      os << v;
    }
    os << "\n";
  }
  return os.str();
}

void write_pgm(const PlaneArray& pi, long maxval, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_pgm: cannot open " + path);
  f << pgm_string(pi, maxval);
}

void write_svg(const PlaneArray& pi, long maxval, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_svg: cannot open " + path);
  long width = 0, height = 0;
  for (Cell c : pi.cells().cells()) {
    width = std::max<long>(width, c.j);
    height = std::max<long>(height, c.i);
  }
  const int px = 8;
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width * px
    << "\" height=\"" << height * px << "\">\n";
  for (Cell c : pi.cells().cells()) {
    long v = pi.at(c).value();
    int gray = maxval > 0 ? static_cast<int>(255 * v / maxval) : 0;
    f << "<rect x=\"" << (c.j - 1) * px << "\" y=\"" << (c.i - 1) * px
      << "\" width=\"" << px << "\" height=\"" << px << "\" fill=\"rgb("
      << gray << "," << gray << "," << gray << ")\"/>\n";
  }
  f << "</svg>\n";
}

namespace {

// Regularized incomplete gamma Q(a,x) by series / continued fraction.
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1.0) {
    // P(a,x) series, return 1 - P.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // Lentz continued fraction for Q.
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_survival(double stat, double dof) {
  return gamma_q(dof / 2.0, stat / 2.0);
}

double ks_distance(std::vector<long> a, std::vector<long> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    long v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  return d;
}

}  // namespace whittaker
