// Placeholder until the acceptance harness lands; fails by design.
#include <cstdio>

int main() {
  std::puts("acceptance harness not implemented yet");
  return 1;
}
