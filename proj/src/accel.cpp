#include "heun/accel.hpp"

#include <algorithm>
#include <stdexcept>

namespace heun {

std::string accelerator_kind::name() const {
  switch (family) {
    case accel_family::none: return "lentz";
    case accel_family::epsilon: return "epsilon";
    case accel_family::rho: return "rho";
    case accel_family::rho_osada: return "rho_" + to_decimal(theta, 4);
    case accel_family::iterated_rho: return "iterated_rho";
    case accel_family::theta: return "theta";
    case accel_family::iterated_theta: return "iterated_theta";
  }
  return "?";
}

namespace {

bool good(const real& x) { return x.is_finite(); }

}  // namespace

accel_stream::accel_stream(const accelerator_kind& kind, bool keep_table)
    : kind_(kind), keep_table_(keep_table) {}

void accel_stream::push(const real& s) {
  if (cols_.empty()) cols_.emplace_back();
  accel_entry e{s, good(s)};
  if (keep_table_) {
    if (table_.empty()) table_.emplace_back();
    table_[0].push_back(e);
  }
  cols_[0].append(std::move(e));
  ++pushed_;
  if (kind_.family != accel_family::none) cascade();
}

// Produce every lozenge entry whose dependencies now exist, shallow to deep.
// The column list grows by at most one per sweep, and only once the current
// deepest column holds an entry to build on.
void accel_stream::cascade() {
  bool progress = true;
  while (progress) {
    progress = false;
    if (cols_.back().count > 0) cols_.emplace_back();
    const long deepest = static_cast<long>(cols_.size()) - 1;
    for (long j = 1; j <= deepest; ++j)
      while (try_produce(j)) progress = true;
  }
}

// Column j next entry index n = cols_[j].count. Entries are addressed by the
// ring: for column c with count k, entry index (k-1) is e2, (k-2) is e1,
// (k-3) is e0.
bool accel_stream::try_produce(long j) {
  column& out = cols_[j];
  const long n = out.count;
  const column& prev = cols_[j - 1];

  auto entry = [](const column& c, long idx) -> const accel_entry& {
    // idx must be one of the last three produced
    if (idx == c.count - 1) return c.e2;
    if (idx == c.count - 2) return c.e1;
    return c.e0;
  };
  auto have = [](const column& c, long idx) {
    return idx >= 0 && idx < c.count && idx >= c.count - 3;
  };

  accel_entry result;
  result.usable = false;

  const accel_family fam = kind_.family;
  if (fam == accel_family::epsilon || fam == accel_family::rho ||
      fam == accel_family::rho_osada) {
    // T_j^(n) = T_{j-2}^(n+1) + num / (T_{j-1}^(n+1) - T_{j-1}^(n))
    if (!have(prev, n) || !have(prev, n + 1)) return false;
    bool base_ok = true;
    real base(0);
    if (j >= 2) {
      const column& prev2 = cols_[j - 2];
      if (!have(prev2, n + 1)) return false;
      const accel_entry& b = entry(prev2, n + 1);
      base = b.value;
      base_ok = b.usable;
    }
    const accel_entry& hi = entry(prev, n + 1);
    const accel_entry& lo = entry(prev, n);
    if (base_ok && hi.usable && lo.usable) {
      real denom = hi.value - lo.value;
      if (!denom.is_zero() && good(denom)) {
        real num(1);
        if (fam == accel_family::rho)
          num = real(j);
        else if (fam == accel_family::rho_osada)
          num = (j - 1) + kind_.theta;
        result.value = base + num / denom;
        result.usable = good(result.value);
      }
    }
  } else if (fam == accel_family::theta) {
    if (j % 2 == 1) {
      // theta_{2k+1}^(n) = theta_{2k-1}^(n+1) + 1/(theta_{2k}^(n+1) - theta_{2k}^(n))
      if (!have(prev, n) || !have(prev, n + 1)) return false;
      bool base_ok = true;
      real base(0);
      if (j >= 2) {
        const column& prev2 = cols_[j - 2];
        if (!have(prev2, n + 1)) return false;
        base = entry(prev2, n + 1).value;
        base_ok = entry(prev2, n + 1).usable;
      }
      const accel_entry& hi = entry(prev, n + 1);
      const accel_entry& lo = entry(prev, n);
      if (base_ok && hi.usable && lo.usable) {
        real denom = hi.value - lo.value;
        if (!denom.is_zero() && good(denom)) {
          result.value = base + 1 / denom;
          result.usable = good(result.value);
        }
      }
    } else {
      // theta_{2k+2}^(n) = theta_{2k}^(n+1)
      //   + [D theta_{2k}^(n+1) * D theta_{2k+1}^(n+1)] / D2 theta_{2k+1}^(n)
      const column& prev2 = cols_[j - 2];
      if (!have(prev, n) || !have(prev, n + 1) || !have(prev, n + 2)) return false;
      if (!have(prev2, n + 1) || !have(prev2, n + 2)) return false;
      const accel_entry& p1 = entry(prev, n);
      const accel_entry& p2 = entry(prev, n + 1);
      const accel_entry& p3 = entry(prev, n + 2);
      const accel_entry& q2 = entry(prev2, n + 1);
      const accel_entry& q3 = entry(prev2, n + 2);
      if (p1.usable && p2.usable && p3.usable && q2.usable && q3.usable) {
        real d2 = p3.value - 2 * p2.value + p1.value;
        if (!d2.is_zero() && good(d2)) {
          result.value = q2.value + ((q3.value - q2.value) * (p3.value - p2.value)) / d2;
          result.usable = good(result.value);
        }
      }
    }
  } else {
    return false;
  }

  if (keep_table_) {
    while (static_cast<long>(table_.size()) <= j) table_.emplace_back();
    table_[j].push_back(result);
  }
  out.append(std::move(result));
  return true;
}

bool accel_stream::has_estimate() const {
  for (long j = static_cast<long>(cols_.size()) - 1; j >= 0; --j) {
    if (j % 2 != 0) continue;
    const column& c = cols_[j];
    if (c.count > 0 && (c.e2.usable || c.e1.usable || c.e0.usable)) return true;
  }
  return false;
}

real accel_stream::estimate() const {
  for (long j = static_cast<long>(cols_.size()) - 1; j >= 0; --j) {
    if (j % 2 != 0) continue;
    const column& c = cols_[j];
    if (c.count == 0) continue;
    if (c.e2.usable) return c.e2.value;
    if (c.count >= 2 && c.e1.usable) return c.e1.value;
    if (c.count >= 3 && c.e0.usable) return c.e0.value;
  }
  throw std::runtime_error("acceleration failed: no usable estimate");
}

long accel_stream::estimate_order() const {
  for (long j = static_cast<long>(cols_.size()) - 1; j >= 0; --j) {
    if (j % 2 != 0) continue;
    const column& c = cols_[j];
    if (c.count == 0) continue;
    if (c.e2.usable || (c.count >= 2 && c.e1.usable) || (c.count >= 3 && c.e0.usable))
      return j;
  }
  return -1;
}

namespace {

// One pass of the order-2 transform used by the iterated variants.
// rho2:   T_n = S_{n+1} + 2 / (1/DS_{n+1} - 1/DS_n)            (consumes 2)
// theta2: T_n = S_{n+1} + DS_{n+1} * Dt1_{n+1} / D2t1_n,
//         t1_n = 1/DS_n                                         (consumes 3)
std::vector<accel_entry> iterate_pass(const std::vector<accel_entry>& s, bool theta2) {
  const long len = static_cast<long>(s.size());
  const long out_len = len - (theta2 ? 3 : 2);
  std::vector<accel_entry> out;
  if (out_len <= 0) return out;
  out.reserve(out_len);

  auto diff_inv = [](const accel_entry& a, const accel_entry& b, accel_entry& r) {
    // r = 1/(b - a)
    r.usable = false;
    if (!a.usable || !b.usable) return;
    real d = b.value - a.value;
    if (d.is_zero() || !d.is_finite()) return;
    r.value = 1 / d;
    r.usable = r.value.is_finite();
  };

  if (!theta2) {
    for (long n = 0; n < out_len; ++n) {
      accel_entry r1a, r1b, e;
      diff_inv(s[n], s[n + 1], r1a);
      diff_inv(s[n + 1], s[n + 2], r1b);
      e.usable = false;
      if (r1a.usable && r1b.usable) {
        real d = r1b.value - r1a.value;
        if (!d.is_zero() && d.is_finite()) {
          e.value = s[n + 1].value + 2 / d;
          e.usable = e.value.is_finite();
        }
      }
      out.push_back(std::move(e));
    }
  } else {
    std::vector<accel_entry> t1(len - 1);
    for (long n = 0; n + 1 < len; ++n) diff_inv(s[n], s[n + 1], t1[n]);
    for (long n = 0; n < out_len; ++n) {
      accel_entry e;
      e.usable = false;
      if (s[n + 1].usable && s[n + 2].usable && t1[n].usable && t1[n + 1].usable &&
          t1[n + 2].usable) {
        real d2 = t1[n + 2].value - 2 * t1[n + 1].value + t1[n].value;
        if (!d2.is_zero() && d2.is_finite()) {
          real ds = s[n + 2].value - s[n + 1].value;
          e.value = s[n + 1].value + ds * (t1[n + 2].value - t1[n + 1].value) / d2;
          e.usable = e.value.is_finite();
        }
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

accel_result iterate_transform(const std::vector<real>& seq, bool theta2, bool keep_table) {
  accel_result res;
  std::vector<accel_entry> cur;
  cur.reserve(seq.size());
  for (const real& v : seq) cur.push_back({v, v.is_finite()});

  long order = 0;
  auto newest_usable = [](const std::vector<accel_entry>& v, real& out) {
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (it->usable) {
        out = it->value;
        return true;
      }
    return false;
  };

  real best;
  bool have = newest_usable(cur, best);
  long best_order = 0;
  if (keep_table) res.columns.push_back(cur);

  const long step = theta2 ? 3 : 2;
  while (static_cast<long>(cur.size()) > step) {
    std::vector<accel_entry> next = iterate_pass(cur, theta2);
    order += 2;
    real cand;
    if (!newest_usable(next, cand)) break;
    best = cand;
    best_order = order;
    have = true;
    cur = std::move(next);
    if (keep_table) res.columns.push_back(cur);
  }

  if (!have) throw std::runtime_error("acceleration failed: no usable estimate");
  res.estimate = best;
  res.order = best_order;
  res.ok = true;
  return res;
}

}  // namespace

accel_result accelerate(const std::vector<real>& seq, const accelerator_kind& kind,
                        const numeric_context& ctx, bool keep_table) {
  scoped_precision guard(ctx);
  if (seq.size() < 3 && kind.family != accel_family::none)
    throw std::invalid_argument("accelerate: need at least 3 sequence values");
  if (kind.family == accel_family::rho_osada && !(kind.theta > 0))
    throw std::invalid_argument("accelerate: Osada rho requires theta > 0");

  if (kind.family == accel_family::none) {
    accel_result res;
    if (seq.empty()) throw std::invalid_argument("accelerate: empty sequence");
    res.estimate = seq.back();
    res.order = 0;
    res.ok = true;
    if (keep_table) {
      res.columns.emplace_back();
      for (const real& v : seq) res.columns[0].push_back({v, v.is_finite()});
    }
    return res;
  }

  if (kind.family == accel_family::iterated_rho)
    return iterate_transform(seq, false, keep_table);
  if (kind.family == accel_family::iterated_theta)
    return iterate_transform(seq, true, keep_table);

  accel_stream st(kind, keep_table);
  for (const real& v : seq) st.push(v);
  accel_result res;
  res.estimate = st.estimate();  // throws if nothing usable
  res.order = st.estimate_order();
  res.ok = true;
  if (keep_table) res.columns = st.table();
  return res;
}

bench_report bench_accelerators(const std::vector<real>& trace,
                                const std::vector<long>& checkpoints,
                                const std::vector<accelerator_kind>& kinds,
                                const numeric_context& ctx) {
  scoped_precision guard(ctx);
  for (size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("bench_accelerators: checkpoints must ascend");
  if (!checkpoints.empty() &&
      checkpoints.back() >= static_cast<long>(trace.size()))
    throw std::invalid_argument("bench_accelerators: checkpoint beyond trace");

  bench_report rep;
  rep.kinds = kinds;
  rep.rows.resize(checkpoints.size());
  for (size_t r = 0; r < checkpoints.size(); ++r) {
    rep.rows[r].terms = checkpoints[r];
    rep.rows[r].values.resize(kinds.size());
    rep.rows[r].ok.assign(kinds.size(), false);
  }

  for (size_t k = 0; k < kinds.size(); ++k) {
    const accelerator_kind& kind = kinds[k];
    switch (kind.family) {
      case accel_family::none: {
        for (size_t r = 0; r < checkpoints.size(); ++r) {
          rep.rows[r].values[k] = trace[checkpoints[r]];
          rep.rows[r].ok[k] = true;
        }
        break;
      }
      case accel_family::epsilon:
      case accel_family::rho:
      case accel_family::rho_osada:
      case accel_family::theta: {
        accel_stream st(kind);
        long fed = 0;
        for (size_t r = 0; r < checkpoints.size(); ++r) {
          while (fed <= checkpoints[r]) st.push(trace[fed++]);
          if (st.has_estimate()) {
            rep.rows[r].values[k] = st.estimate();
            rep.rows[r].ok[k] = true;
          }
        }
        break;
      }
      case accel_family::iterated_rho:
      case accel_family::iterated_theta: {
        for (size_t r = 0; r < checkpoints.size(); ++r) {
          std::vector<real> prefix(trace.begin(), trace.begin() + checkpoints[r] + 1);
          try {
            accel_result a = accelerate(prefix, kind, ctx);
            rep.rows[r].values[k] = a.estimate;
            rep.rows[r].ok[k] = a.ok;
          } catch (const std::exception&) {
            rep.rows[r].ok[k] = false;
          }
        }
        break;
      }
    }
  }
  return rep;
}

}  // namespace heun
