// SPDX-License-Identifier: Apache-2.0
#include <cstdio>

int main() {
  std::puts("convexsem: command surface not wired up yet");
  return 2;
}
