#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ctalg/dyson.hpp"
#include "ctalg/error.hpp"
#include "ctalg/rational.hpp"
#include "ctalg/typea.hpp"

namespace ctalg {

/// Compositions of `total` into `parts` nonnegative parts, lexicographic.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(parts));
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, left - v);
    }
  };
  if (parts > 0) rec(0, total);
  return out;
}

/// prod_i x_i^{(m_i - 1) t} / prod_{j != i} (1 - x_j/x_i)^{m_i}
inline TypeARational birkhoff_term(const std::vector<int>& m, long t) {
  const int n = static_cast<int>(m.size());
  Monomial mono;
  std::vector<RawFactor> den;
  for (int i = 1; i <= n; ++i) {
    const int mi = m[static_cast<std::size_t>(i - 1)];
    mono.set(i, static_cast<int>((mi - 1) * t));
    for (int j = 1; j <= n; ++j) {
      if (j != i && mi > 0) den.push_back({i, j, mi});
    }
  }
  return TypeARational::normalize(LaurentPoly::monomial(mono), den);
}

/// Worker count: explicit request, else CTALG_THREADS, else the hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CTALG_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// H_n(t) for every t in ts, the multinomial terms spread over a worker pool.
inline std::map<long, Integer> birkhoff_values(int n, const std::vector<long>& ts, unsigned threads = 0) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  for (long t : ts) {
    if (t < 0) throw Error(ErrorKind::InvalidArgument, "t must be >= 0");
  }
  const auto comps = compositions(n, n);
  struct Job {
    std::size_t t_index;
    std::size_t comp;
  };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t c = 0; c < comps.size(); ++c) jobs.push_back({a, c});
  }
  std::vector<Rational> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const auto& m = comps[jobs[k].comp];
      results[k] = Rational(multinomial(m)) * ta_full_ct(birkhoff_term(m, ts[jobs[k].t_index]));
    }
  };
  const unsigned pool = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> workers;
  for (unsigned w = 1; w < pool; ++w) workers.emplace_back(work);
  work();
  for (auto& th : workers) th.join();

  std::map<long, Rational> sums;
  for (std::size_t k = 0; k < jobs.size(); ++k) sums[ts[jobs[k].t_index]] += results[k];
  std::map<long, Integer> out;
  for (const auto& [t, v] : sums) {
    if (v.get_den() != 1) throw std::logic_error("non-integral Ehrhart value");
    out[t] = v.get_num();
  }
  for (long t : ts) out.try_emplace(t, 0);
  return out;
}

/// Coefficients (ascending) of the polynomial through the given points.
inline std::vector<Rational> interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  const std::size_t k = pts.size();
  std::vector<Rational> dd(k);
  for (std::size_t a = 0; a < k; ++a) dd[a] = pts[a].second;
  for (std::size_t lvl = 1; lvl < k; ++lvl) {
    for (std::size_t a = k - 1; a >= lvl; --a) {
      const Rational gap = pts[a].first - pts[a - lvl].first;
      if (gap == 0) throw Error(ErrorKind::InvalidArgument, "repeated interpolation node");
      dd[a] = (dd[a] - dd[a - 1]) / gap;
    }
  }
  // Newton form to monomial basis, innermost first.
  std::vector<Rational> poly;
  for (std::size_t a = k; a-- > 0;) {
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * pts[a].first;
    }
    next[0] += dd[a];
    poly = std::move(next);
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

inline Rational eval_poly(const std::vector<Rational>& p, const Rational& t) {
  Rational v = 0;
  for (std::size_t e = p.size(); e-- > 0;) v = v * t + p[e];
  return v;
}

/// Fits the first `needed` points and checks the rest against the fit.
inline std::vector<Rational> interpolate_checked(const std::vector<std::pair<Rational, Rational>>& pts,
                                                 std::size_t needed) {
  if (pts.size() < needed) {
    throw Error(ErrorKind::InsufficientPoints, "need " + std::to_string(needed) + " distinct points, got " +
                                                   std::to_string(pts.size()));
  }
  std::vector<std::pair<Rational, Rational>> head(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(needed));
  auto poly = interpolate(head);
  for (const auto& [t, v] : pts) {
    if (eval_poly(poly, t) != v) {
      throw Error(ErrorKind::InterpolationMismatch, "value at t = " + to_string(t) + " disagrees with the interpolant");
    }
  }
  return poly;
}

struct EhrhartResult {
  int n = 0;
  std::map<long, Integer> values;
  std::optional<std::vector<Rational>> polynomial;
};

/// Values of H_n and, on request, the interpolating polynomial of degree at
/// most (n-1)^2. Points beyond the first (n-1)^2 + 1 are used as checks.
inline EhrhartResult cmd_birkhoff(int n, const std::vector<long>& ts, bool want_poly, unsigned threads = 0) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  EhrhartResult r;
  r.n = n;
  const std::size_t needed = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
  std::set<long> distinct(ts.begin(), ts.end());
  if (want_poly && distinct.size() < needed) {
    throw Error(ErrorKind::InsufficientPoints,
                "need " + std::to_string(needed) + " distinct t values, got " + std::to_string(distinct.size()));
  }
  r.values = birkhoff_values(n, {distinct.begin(), distinct.end()}, threads);
  if (want_poly) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& [t, v] : r.values) pts.emplace_back(Rational(t), Rational(v));
    r.polynomial = interpolate_checked(pts, needed);
  }
  return r;
}

/// Number of n x n nonnegative integer matrices with all line sums t, by
/// dynamic programming over columns on the vector of remaining row sums.
inline Integer brute_force_lattice_count(int n, int t) {
  if (n < 1 || t < 0) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and t >= 0");
  std::map<std::vector<int>, Integer> states;
  states[std::vector<int>(static_cast<std::size_t>(n), t)] = 1;
  const auto cols = compositions(t, n);
  for (int c = 0; c < n; ++c) {
    std::map<std::vector<int>, Integer> next;
    for (const auto& [rem, ways] : states) {
      for (const auto& col : cols) {
        std::vector<int> r2 = rem;
        bool ok = true;
        for (std::size_t k = 0; k < r2.size(); ++k) {
          r2[k] -= col[k];
          if (r2[k] < 0) {
            ok = false;
            break;
          }
        }
        if (ok) next[r2] += ways;
      }
    }
    states = std::move(next);
  }
  auto it = states.find(std::vector<int>(static_cast<std::size_t>(n), 0));
  return it == states.end() ? Integer(0) : it->second;
}

/// "t^4/8 + 3*t/4 + 1" style rendering, highest degree first.
inline std::string poly_to_string(const std::vector<Rational>& p, const std::string& var = "t") {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (std::size_t e = p.size(); e-- > 0;) {
    const Rational& c = p[e];
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
    if (mono.empty()) {
      s += to_string(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += to_string(mag) + "*" + mono;
    }
  }
  return s;
}

}  // namespace ctalg
