#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cutlab/error.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const cutlab::cli::RunConfig cfg = cutlab::cli::parse_config_args(args);
    return cutlab::cli::execute(cfg);
  } catch (const cutlab::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const cutlab::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.code() == cutlab::ErrorCode::ParseError || err.code() == cutlab::ErrorCode::ValidationError ? 2 : 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
