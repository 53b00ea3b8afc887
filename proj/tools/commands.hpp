#pragma once

#include "CLI11.hpp"

namespace avocli {

// Wires every subcommand onto the app; each leaf stores its action in `run`.
void register_commands(CLI::App& app);

}  // namespace avocli
