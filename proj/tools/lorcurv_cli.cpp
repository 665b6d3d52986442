// Placeholder until the CLI lands; fails by design.
#include <cstdio>

int main() {
  std::puts("cli not implemented yet");
  return 1;
}
