// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return wids::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
