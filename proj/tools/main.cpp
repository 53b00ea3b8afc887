#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "avo/lmfdb.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"avorders: symplectic censuses, Koblitz-type constants, and "
               "order statistics of hyperelliptic Jacobians over finite fields"};
  app.require_subcommand(1);
  avocli::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;  // usage error
  } catch (const avo::lmfdb::MalformedLabelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;  // computation error
  }
  return 0;
}
