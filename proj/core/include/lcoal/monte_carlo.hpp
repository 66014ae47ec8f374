#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lcoal/measure.hpp"
#include "lcoal/rates.hpp"

namespace lcoal {

enum class SamplerKind { Epochs, Chain, Coupled, Tagged };

struct SamplerJob {
  SamplerKind kind = SamplerKind::Epochs;
  CharacteristicMeasure measure = CharacteristicMeasure::uniform();
  std::int64_t n = 1;
  std::shared_ptr<const RateTable> table;  // Chain only
};

/// One replicate. Columns a sampler does not produce stay empty.
struct SampleRow {
  std::int64_t replicate = 0;
  std::int64_t n = 0;
  std::optional<std::int64_t> X;
  std::optional<double> tau;
  std::optional<std::int64_t> K, K1, K0;
  std::optional<double> sigma;
  std::optional<std::int64_t> U, X_after;
  std::optional<double> Z;
  std::optional<std::int64_t> G;
};

/// Stream tag of a job: distinct per (kind, n) so that samples of different
/// jobs under one seed are independent.
std::uint32_t stream_tag(const SamplerJob& job) noexcept;

/// Runs `replicates` independent copies of the job. Replicate i draws from
/// RandomStream(seed, i, tag), so the table does not depend on `workers` or on
/// scheduling. `workers` <= 0 means hardware concurrency.
std::vector<SampleRow> monte_carlo(const SamplerJob& job, std::int64_t replicates,
                                   std::uint64_t seed, int workers);
std::vector<SampleRow> monte_carlo(const SamplerJob& job, std::int64_t replicates,
                                   std::uint64_t seed, int workers, std::uint32_t tag);

/// Calls body(i) for every i in [0, count) on up to `workers` threads
/// (<= 0: hardware concurrency). The first exception thrown is rethrown.
void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& body);

/// Header `replicate,n,X,tau,K,K1,K0,sigma,U,X_after,Z,G`; reals with 17
/// significant digits.
void write_csv(std::ostream& out, std::span<const SampleRow> rows);
/// Array of objects with the CSV column names; absent fields are null.
void write_json(std::ostream& out, std::span<const SampleRow> rows);

std::vector<double> column_X(std::span<const SampleRow> rows);
std::vector<double> column_tau(std::span<const SampleRow> rows);

}  // namespace lcoal
