#include <iostream>

#include "rhd/app.hpp"

int main(int argc, char** argv) { return rhd::app::execute(argc, argv, std::cout, std::cerr); }
