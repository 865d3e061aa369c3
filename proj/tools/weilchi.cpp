#include "weil/driver.hpp"

#include <iostream>

int main(int argc, char** argv) { return weil::cli::main_entry(argc, argv, std::cout, std::cerr); }
