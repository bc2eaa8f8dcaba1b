#pragma once

#include <string>

#include "bdlab/baez_duarte.hpp"

namespace bdlab {

/// On-disk form of a resumable generic-sum run: key:value text, every number
/// a decimal/integer string at full precision. Resume is refused when the
/// config fingerprint or precision disagrees.
struct ExperimentCheckpoint {
    std::string config_fingerprint;
    long k = 0;
    long next_j = 0;
    long precision_digits = 0;  // working digits of the accumulator
    std::string partial_sum;
    std::string binomial_state;
    bool complete = false;
};

/// Atomic write (temp file + rename).
void write_checkpoint_file(const std::string& path, const ExperimentCheckpoint& cp);

/// Throws FormatError on missing keys or truncation.
ExperimentCheckpoint read_checkpoint_file(const std::string& path);

ExperimentCheckpoint checkpoint_from_state(const GenericState& st,
                                           const std::string& fingerprint, bool complete);
GenericState state_from_checkpoint(const ExperimentCheckpoint& cp);

}  // namespace bdlab
