#ifndef DITOP_CLI_HPP
#define DITOP_CLI_HPP

namespace ditop {

// Entry point of the `ditop` tool.  Flags: --scene (scene JSON or .pv
// program), --task (repeatable), --max-paths, --max-steps, --format
// text|json|dot|svg, --out; env DITOP_BUDGET="max_paths,max_steps" sets
// defaults.  Exit codes: 0 ok, 1 analysis failure, 2 input error; failures
// emit machine-readable error JSON.
int run_cli(int argc, const char* const* argv);

} // namespace ditop

#endif
