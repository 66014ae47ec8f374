#include "lcoal/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lcoal/simulate.hpp"

namespace lcoal {

namespace {

SampleRow run_one(const SamplerJob& job, std::int64_t replicate, RandomStream& rng) {
  SampleRow row;
  row.replicate = replicate;
  row.n = job.n;
  switch (job.kind) {
    case SamplerKind::Epochs: {
      const auto s = simulate_coalescent_epochs(job.measure, job.n, rng);
      row.X = s.collisions;
      row.tau = s.absorption_time;
      break;
    }
    case SamplerKind::Chain: {
      const auto s = simulate_coalescent_chain(*job.table, job.n, rng);
      row.X = s.collisions;
      row.tau = s.absorption_time;
      break;
    }
    case SamplerKind::Coupled: {
      const auto s = simulate_coupled(job.measure, job.n, rng);
      row.X = s.collisions;
      row.tau = s.absorption_time;
      row.K = s.jumps;
      row.K1 = s.unit_jumps;
      row.K0 = s.idle_epochs;
      row.sigma = s.sigma;
      row.U = s.survivors;
      row.X_after = s.collisions_after;
      break;
    }
    case SamplerKind::Tagged: {
      const auto s = simulate_tagged(job.measure, job.n, rng);
      row.Z = s.external_branch;
      row.G = s.collisions_before;
      break;
    }
  }
  return row;
}

void put_real(std::ostream& out, const std::optional<double>& x) {
  if (!x) return;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  out << buf;
}

void put_int(std::ostream& out, const std::optional<std::int64_t>& x) {
  if (x) out << *x;
}

template <class T>
nlohmann::ordered_json or_null(const std::optional<T>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::uint32_t stream_tag(const SamplerJob& job) noexcept {
  const auto kind = static_cast<std::uint64_t>(job.kind);
  return static_cast<std::uint32_t>(mix64(static_cast<std::uint64_t>(job.n) * 8 + kind) >> 32);
}

void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::int64_t>(workers, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count || failed.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<SampleRow> monte_carlo(const SamplerJob& job, std::int64_t replicates,
                                   std::uint64_t seed, int workers) {
  return monte_carlo(job, replicates, seed, workers, stream_tag(job));
}

std::vector<SampleRow> monte_carlo(const SamplerJob& job, std::int64_t replicates,
                                   std::uint64_t seed, int workers, std::uint32_t tag) {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (job.kind == SamplerKind::Chain && !job.table) {
    throw std::invalid_argument("chain sampler needs a rate table");
  }
  std::vector<SampleRow> rows(static_cast<std::size_t>(replicates));
  parallel_for(replicates, workers, [&](std::int64_t i) {
    RandomStream rng(seed, static_cast<std::uint64_t>(i), tag);
    rows[static_cast<std::size_t>(i)] = run_one(job, i, rng);
  });
  return rows;
}

void write_csv(std::ostream& out, std::span<const SampleRow> rows) {
  out << "replicate,n,X,tau,K,K1,K0,sigma,U,X_after,Z,G\n";
  for (const auto& r : rows) {
    out << r.replicate << ',' << r.n << ',';
    put_int(out, r.X);
    out << ',';
    put_real(out, r.tau);
    out << ',';
    put_int(out, r.K);
    out << ',';
    put_int(out, r.K1);
    out << ',';
    put_int(out, r.K0);
    out << ',';
    put_real(out, r.sigma);
    out << ',';
    put_int(out, r.U);
    out << ',';
    put_int(out, r.X_after);
    out << ',';
    put_real(out, r.Z);
    out << ',';
    put_int(out, r.G);
    out << '\n';
  }
}

void write_json(std::ostream& out, std::span<const SampleRow> rows) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc.push_back({{"replicate", r.replicate},
                   {"n", r.n},
                   {"X", or_null(r.X)},
                   {"tau", or_null(r.tau)},
                   {"K", or_null(r.K)},
                   {"K1", or_null(r.K1)},
                   {"K0", or_null(r.K0)},
                   {"sigma", or_null(r.sigma)},
                   {"U", or_null(r.U)},
                   {"X_after", or_null(r.X_after)},
                   {"Z", or_null(r.Z)},
                   {"G", or_null(r.G)}});
  }
  out << doc.dump(2) << '\n';
}

std::vector<double> column_X(std::span<const SampleRow> rows) {
  std::vector<double> x;
  x.reserve(rows.size());
  for (const auto& r : rows) x.push_back(static_cast<double>(r.X.value()));
  return x;
}

std::vector<double> column_tau(std::span<const SampleRow> rows) {
  std::vector<double> x;
  x.reserve(rows.size());
  for (const auto& r : rows) x.push_back(r.tau.value());
  return x;
}

}  // namespace lcoal
