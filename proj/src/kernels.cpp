#include "berrykit/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <exception>

namespace bk::kernels {

namespace {

std::optional<std::size_t> first_failed_step(Nat len, Nat occ) {
  const BoundCertificate c = certify_bounds(MockPhi{len, occ});
  for (std::size_t i = 0; i < c.chain.size(); ++i)
    if (!c.chain[i].holds) return i;
  return std::nullopt;
}

bool leg_holds(Nat k) {
  using W = unsigned __int128;
  const W kk = k;
  return 18 * kk + 2 * kk * kk < 10 * kk * kk;
}

// Exceptions must not escape an OpenMP region; the first one is rethrown.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(bk_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

std::vector<GridFailure> certify_grid_serial(Nat len_lo, Nat len_hi, Nat occ_lo, Nat occ_hi) {
  std::vector<GridFailure> out;
  for (Nat len = len_lo; len <= len_hi; ++len)
    for (Nat occ = occ_lo; occ <= occ_hi; ++occ)
      if (auto step = first_failed_step(len, occ)) out.push_back({len, occ, *step});
  return out;
}

std::vector<GridFailure> certify_grid_parallel(Nat len_lo, Nat len_hi, Nat occ_lo, Nat occ_hi) {
  if (len_hi < len_lo || occ_hi < occ_lo) return {};
  const auto rows = static_cast<std::int64_t>(len_hi - len_lo + 1);
  std::vector<std::vector<GridFailure>> per_row(rows);
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < rows; ++r) {
    err.run([&] {
      const Nat len = len_lo + static_cast<Nat>(r);
      for (Nat occ = occ_lo; occ <= occ_hi; ++occ)
        if (auto step = first_failed_step(len, occ)) per_row[r].push_back({len, occ, *step});
    });
  }
  err.rethrow();
  std::vector<GridFailure> out;
  for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::optional<Nat> arithmetic_leg_serial(Nat lo, Nat hi) {
  for (Nat k = lo; k <= hi; ++k)
    if (!leg_holds(k)) return k;
  return std::nullopt;
}

std::optional<Nat> arithmetic_leg_parallel(Nat lo, Nat hi) {
  if (hi < lo) return std::nullopt;
  const auto count = static_cast<std::int64_t>(hi - lo + 1);
  std::int64_t first = count;
#pragma omp parallel for reduction(min : first)
  for (std::int64_t i = 0; i < count; ++i)
    if (!leg_holds(lo + static_cast<Nat>(i)) && i < first) first = i;
  if (first == count) return std::nullopt;
  return lo + static_cast<Nat>(first);
}

std::vector<NameOutcome> name_table_serial(const std::vector<Expr>& formulas, const NamingBackend& backend) {
  std::vector<NameOutcome> out;
  out.reserve(formulas.size());
  for (const Expr& f : formulas) out.push_back(name_of(f, backend));
  return out;
}

std::vector<NameOutcome> name_table_parallel(const std::vector<Expr>& formulas, const NamingBackend& backend) {
  std::vector<NameOutcome> out(formulas.size());
  const auto n = static_cast<std::int64_t>(formulas.size());
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) err.run([&] { out[i] = name_of(formulas[i], backend); });
  err.rethrow();
  return out;
}

NamerSearch first_namer_serial(const std::vector<Expr>& formulas, Nat i, const NamingBackend& backend) {
  NamerSearch s;
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    NameOutcome o = name_of(formulas[k], backend, i);
    if (o.status == NameOutcome::Status::Unknown) s.any_unknown = true;
    if (o.status == NameOutcome::Status::Names && o.number == i) {
      s.index = k;
      s.derivation = std::move(o.derivation);
      return s;
    }
  }
  return s;
}

NamerSearch first_namer_parallel(const std::vector<Expr>& formulas, Nat i, const NamingBackend& backend) {
  // Formulas past the best hit so far are skipped; the minimum index wins,
  // so the result matches the serial scan.
  const auto n = static_cast<std::int64_t>(formulas.size());
  std::atomic<std::int64_t> best{n};
  std::vector<NameOutcome> outcomes(formulas.size());
  std::vector<char> done(formulas.size(), 0);
  ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < n; ++k) {
    if (k > best.load()) continue;
    err.run([&] {
      outcomes[k] = name_of(formulas[k], backend, i);
      done[k] = 1;
      if (outcomes[k].status == NameOutcome::Status::Names && outcomes[k].number == i) {
        std::int64_t cur = best.load();
        while (k < cur && !best.compare_exchange_weak(cur, k)) {
        }
      }
    });
  }
  err.rethrow();
  NamerSearch s;
  const std::int64_t stop = best.load();
  for (std::int64_t k = 0; k < stop; ++k)
    if (done[k] && outcomes[k].status == NameOutcome::Status::Unknown) s.any_unknown = true;
  if (stop < n) {
    s.index = static_cast<std::size_t>(stop);
    s.derivation = std::move(outcomes[stop].derivation);
  }
  return s;
}

}  // namespace bk::kernels
