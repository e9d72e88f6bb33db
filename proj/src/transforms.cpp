#include "meton/transforms.hpp"

#include "meton/rng.hpp"

namespace meton {

TargetPool TargetPool::from_samples(const std::vector<Sample>& samples,
                                    std::uint64_t seed,
                                    const std::string& restrict_to_dataset) {
  TargetPool pool;
  pool.seed = seed;
  for (const Sample& s : samples) {
    if (!restrict_to_dataset.empty() && s.dataset != restrict_to_dataset)
      continue;
    pool.surfaces.push_back(s.target_surface());
  }
  if (!samples.empty() && pool.surfaces.empty())
    throw ValidationError("target pool: no targets after dataset restriction \"" +
                          restrict_to_dataset + "\"");
  return pool;
}

Sample mask_target(const Sample& sample) {
  Sample out = sample;
  std::string before = utf8::slice(sample.text, 0, sample.target_start);
  std::string after =
      utf8::slice(sample.text, sample.target_end, utf8::length(sample.text));
  out.text = before + "X" + after;
  out.target_end = out.target_start + 1;
  // pmw_key intentionally untouched
  if (out.id.size() < 5 || out.id.compare(out.id.size() - 5, 5, ":mask") != 0)
    out.id += ":mask";
  return out;
}

std::vector<Sample> augment(const std::vector<Sample>& samples,
                            const TargetPool& pool, std::size_t copies) {
  if (copies > 0 && pool.surfaces.empty())
    throw ValidationError("augment: target pool is empty");
  std::vector<Sample> out;
  out.reserve(samples.size() * (copies + 1));
  out = samples;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Sample& s = samples[k];
    Rng rng(Rng::derive(pool.seed, k));
    std::string before = utf8::slice(s.text, 0, s.target_start);
    std::string after = utf8::slice(s.text, s.target_end, utf8::length(s.text));
    for (std::size_t c = 1; c <= copies; ++c) {
      const std::string& repl = pool.surfaces[rng.index(pool.surfaces.size())];
      Sample fresh = s;
      fresh.id += ":aug" + std::to_string(c);
      fresh.text = before + repl + after;
      fresh.target_end = fresh.target_start + utf8::length(repl);
      fresh.pmw_key = utf8::fold(repl);
      out.push_back(std::move(fresh));
    }
  }
  return out;
}

}  // namespace meton
