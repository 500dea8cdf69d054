#include <iostream>

#include "convboot_app/app.hpp"

int main(int argc, char** argv) {
    return convboot::app::run(argc, argv, std::cout, std::cerr);
}
