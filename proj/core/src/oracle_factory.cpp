#include "borderforge/datagen.hpp"
#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"

namespace borderforge {

std::unique_ptr<Oracle> make_oracle(const std::string& spec, std::uint64_t seed) {
  if (spec == "none") return nullptr;
  if (spec == "perfect") return std::make_unique<PerfectOracle>();
  if (spec == "full") return std::make_unique<FullOracle>();
  if (spec == "empty") return std::make_unique<EmptyOracle>();
  if (spec == "random") return std::make_unique<RandomSubsetOracle>(seed);
  if (spec == "adversarial") return std::make_unique<AdversarialOracle>();
  if (spec.rfind("replay:", 0) == 0) {
    return std::make_unique<ReplayOracle>(make_replay_oracle(read_dataset(spec.substr(7))));
  }
  if (spec.rfind("external:", 0) == 0) return std::make_unique<ExternalOracle>(spec.substr(9));
  throw ConfigError("unknown oracle '" + spec + "'");
}

}  // namespace borderforge
