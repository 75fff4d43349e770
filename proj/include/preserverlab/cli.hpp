#pragma once

namespace plab {

// Parses arguments, runs the requested command and writes a run report to
// stdout or --out. Exit codes: 0 when the check, canonicalization or suite
// passed; 1 when a property was violated or the map was rejected; 2 for
// usage errors, malformed specifications, missing table samples and
// internal failures.
int run_cli(int argc, const char* const* argv);

}  // namespace plab
