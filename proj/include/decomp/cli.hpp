#pragma once

// Command-line front end.
//
//   decomp mu [posets|sets|forests|ptrees] [<input>]    μ of one structure, or a table over the corpus
//   decomp coproduct <instance> <input>
//   decomp phi <instance> <input>                       Φ_k for k = 0..size
//   decomp enumerate <instance> --max-size N [--max-degree k]
//   decomp verify <target> [--instance X] [--mutate M]
//
// Exit status: 0 success, 1 a verification failed, 2 bad input or flags.

#include <iosfwd>
#include <string>
#include <vector>

namespace decomp {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decomp
