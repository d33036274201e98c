// Command-line front end. Subcommands are filled in as the library grows.
#include <cstdio>

int main() {
  std::puts("arcring: no subcommand given");
  return 2;
}
