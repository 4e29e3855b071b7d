#pragma once

#include <string>
#include <vector>

#include "heun/numctx.hpp"

namespace heun {

enum class accel_family { none, epsilon, rho, rho_osada, iterated_rho, theta, iterated_theta };

struct accelerator_kind {
  accel_family family = accel_family::none;
  real theta;  // Osada decay parameter; only rho_osada reads it

  static accelerator_kind none() { return {accel_family::none, real(0)}; }
  static accelerator_kind epsilon() { return {accel_family::epsilon, real(0)}; }
  static accelerator_kind rho() { return {accel_family::rho, real(0)}; }
  static accelerator_kind rho_osada(const real& th) { return {accel_family::rho_osada, th}; }
  static accelerator_kind iterated_rho() { return {accel_family::iterated_rho, real(0)}; }
  static accelerator_kind theta_algorithm() { return {accel_family::theta, real(0)}; }
  static accelerator_kind iterated_theta() { return {accel_family::iterated_theta, real(0)}; }

  std::string name() const;
};

struct accel_entry {
  real value;
  bool usable = false;
};

// Lozenge entry table kept only on request (memory grows quadratically).
// columns[0] mirrors the input sequence; columns[k] holds the order-k entries.
struct accel_result {
  real estimate;
  long order = 0;  // transform order of the reported estimate
  bool ok = false;
  std::vector<std::vector<accel_entry>> columns;
};

// Streaming lozenge evaluator for the epsilon / rho / Osada-rho / theta
// algorithms. Push convergents one at a time; snapshot() reports the deepest
// usable even-order entry seen so far, which is what the comparison table
// tabulates at each term count. Division-by-zero rungs become holes that
// propagate; the snapshot falls back to shallower columns past them.
class accel_stream {
 public:
  accel_stream(const accelerator_kind& kind, bool keep_table = false);

  void push(const real& s);
  long size() const { return pushed_; }

  bool has_estimate() const;
  real estimate() const;
  long estimate_order() const;

  const std::vector<std::vector<accel_entry>>& table() const { return table_; }

 private:
  void cascade();
  bool try_produce(long j);

  accelerator_kind kind_;
  bool keep_table_;
  long pushed_ = 0;
  // last three entries per column, newest last, plus total produced count
  struct column {
    accel_entry e0, e1, e2;  // e2 newest
    long count = 0;
    void append(accel_entry v) {
      e0 = std::move(e1);
      e1 = std::move(e2);
      e2 = std::move(v);
      ++count;
    }
  };
  std::vector<column> cols_;
  std::vector<std::vector<accel_entry>> table_;
};

// One-shot interface: stream the whole sequence and return the final snapshot.
accel_result accelerate(const std::vector<real>& seq, const accelerator_kind& kind,
                        const numeric_context& ctx, bool keep_table = false);

// Accelerator comparison grid: one row per checkpoint, one value per kind.
// Streaming kinds are evaluated in a single pass with snapshots at the
// checkpoints; the iterated variants are recomputed per checkpoint prefix.
struct bench_row {
  long terms = 0;
  std::vector<real> values;
  std::vector<bool> ok;
};

struct bench_report {
  std::vector<accelerator_kind> kinds;
  std::vector<bench_row> rows;
};

bench_report bench_accelerators(const std::vector<real>& trace,
                                const std::vector<long>& checkpoints,
                                const std::vector<accelerator_kind>& kinds,
                                const numeric_context& ctx);

}  // namespace heun
