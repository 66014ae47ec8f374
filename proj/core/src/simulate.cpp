#include "lcoal/simulate.hpp"

#include <stdexcept>
#include <string>

#include "lcoal/binomial.hpp"

namespace lcoal {

namespace {

void require_at_least(std::int64_t n, std::int64_t lo, const char* who) {
  if (n < lo) {
    throw std::invalid_argument(std::string(who) + " needs n >= " + std::to_string(lo) +
                                ", got " + std::to_string(n));
  }
}

}  // namespace

CoalescentSummary simulate_coalescent_epochs(const CharacteristicMeasure& measure, std::int64_t n,
                                             RandomStream& rng, bool record_merges) {
  require_at_least(n, 1, "simulate_coalescent_epochs");
  CoalescentSummary out;
  out.n = n;
  if (record_merges) out.merge_sizes.emplace();
  std::int64_t m = n;
  double t = 0.0;
  while (m > 1) {
    t += exponential(rng);
    const Mark mark = measure.sample(rng);
    const std::int64_t heads = binomial(rng, m, mark.head, mark.tail);
    if (heads >= 2) {
      m -= heads - 1;
      ++out.collisions;
      if (record_merges) out.merge_sizes->push_back(heads - 1);
    }
  }
  out.absorption_time = t;
  return out;
}

CoalescentSummary simulate_coalescent_chain(const RateTable& table, std::int64_t n,
                                            RandomStream& rng, bool record_merges) {
  require_at_least(n, 1, "simulate_coalescent_chain");
  if (n > table.n_max()) {
    throw std::out_of_range("chain sampler: n=" + std::to_string(n) + " exceeds the rate table (" +
                            std::to_string(table.n_max()) + ")");
  }
  CoalescentSummary out;
  out.n = n;
  if (record_merges) out.merge_sizes.emplace();
  std::int64_t m = n;
  double t = 0.0;
  while (m > 1) {
    t += exponential(rng) / table.g_total(m);
    const std::int64_t next = table.sample_jump(m, rng);
    ++out.collisions;
    if (record_merges) out.merge_sizes->push_back(m - next);
    m = next;
  }
  out.absorption_time = t;
  return out;
}

CoupledSample simulate_coupled(const CharacteristicMeasure& measure, std::int64_t n,
                               RandomStream& rng, bool record_trace) {
  require_at_least(n, 2, "simulate_coupled");
  CoupledSample out;
  out.n = n;
  if (record_trace) out.trace.emplace();
  std::int64_t primary = n, secondary = 0;
  double t = 0.0;

  while (primary > 0) {
    t += exponential(rng);
    const Mark mark = measure.sample(rng);
    const std::int64_t hp = binomial(rng, primary, mark.head, mark.tail);
    const std::int64_t hs = secondary > 0 ? binomial(rng, secondary, mark.head, mark.tail) : 0;
    if (hp + hs >= 2) ++out.collisions;
    if (hp + hs >= 1) {
      primary -= hp;
      secondary += 1 - hs;
    }
    if (hp == 0) {
      ++out.idle_epochs;
    } else {
      ++out.jumps;
      if (hp == 1) ++out.unit_jumps;
      out.composition.push_back(hp);
    }
    if (record_trace) out.trace->push_back({t, primary + secondary, primary});
  }
  out.sigma = t;
  out.survivors = secondary;

  std::int64_t m = secondary;
  while (m > 1) {
    t += exponential(rng);
    const Mark mark = measure.sample(rng);
    const std::int64_t heads = binomial(rng, m, mark.head, mark.tail);
    if (heads >= 2) {
      m -= heads - 1;
      ++out.collisions_after;
    }
    if (record_trace) out.trace->push_back({t, m, 0});
  }
  out.collisions += out.collisions_after;
  out.absorption_time = t;
  return out;
}

TaggedSample simulate_tagged(const CharacteristicMeasure& measure, std::int64_t n,
                             RandomStream& rng) {
  require_at_least(n, 2, "simulate_tagged");
  TaggedSample out;
  std::int64_t others = n - 1;  // untagged particles
  double t = 0.0;
  for (;;) {
    t += exponential(rng);
    const Mark mark = measure.sample(rng);
    const bool tagged_head = rng.uniform() < mark.head;
    const std::int64_t heads = binomial(rng, others, mark.head, mark.tail);
    if (tagged_head && heads >= 1) {
      ++out.collisions_before;
      out.external_branch = t;
      return out;
    }
    if (heads >= 2) {
      others -= heads - 1;
      ++out.collisions_before;
    }
  }
}

}  // namespace lcoal
