#include <vector>

#include "rdvswarm/cli.hpp"

int main(int argc, char** argv) {
    return rdvswarm::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
