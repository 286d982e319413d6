#pragma once

#include <memory>
#include <string>
#include <vector>

#include "splinaf/anc.hpp"
#include "splinaf/config.hpp"
#include "splinaf/criteria.hpp"
#include "splinaf/sysid.hpp"

namespace splinaf {

// Named, fully specified experiment configuration.
struct ExperimentPreset {
  std::string name;
  std::string summary;
  KvConfig config;
};

const std::vector<ExperimentPreset>& presets();
const ExperimentPreset* find_preset(const std::string& name);

// Builds a criterion from a [criterion] section (kind + parameters).
std::shared_ptr<const Criterion> criterion_from_config(const KvConfig& cfg);

// Builds a noise spec from the given section.
NoiseSpec noise_from_config(const KvConfig& cfg, const std::string& section);

// Typed views of a full config; throw std::invalid_argument on bad fields.
NsiConfig nsi_from_config(const KvConfig& cfg);
AncConfig anc_from_config(const KvConfig& cfg);

}  // namespace splinaf
