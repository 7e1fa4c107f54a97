#include <iostream>
#include <string>
#include <vector>

#include "ginipop/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const ginipop::cli::CliConfig cfg = ginipop::cli::parse_args(args);
    return ginipop::cli::run(cfg, std::cin, std::cout, std::cerr);
  } catch (const ginipop::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const ginipop::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n'
              << "run with --help for the command list\n";
    return 1;
  }
}
