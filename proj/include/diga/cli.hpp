#pragma once

namespace diga {

/// Parse and run one `diga` command (evolve | gd | synth).
/// Returns the process exit code: 0 success, 1 runtime error, 2 bad
/// configuration, 3 bad data. DIGA_SEED in the environment overrides --seed.
int run_cli(int argc, const char* const* argv);

} // namespace diga
