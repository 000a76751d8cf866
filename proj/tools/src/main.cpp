#include "tourcast_app/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return tourcast::app::run_cli(argc, argv, std::cout, std::cerr); }
