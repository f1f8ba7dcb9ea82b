#include <string>
#include <vector>

#include "ctml/pipeline.hpp"

int main(int argc, char** argv) {
    return ctml::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
