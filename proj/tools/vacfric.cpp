// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "vacfric/cli.hpp"

int main(int argc, char** argv) { return vacfric::cli::run(argc, argv, std::cout, std::cerr); }
