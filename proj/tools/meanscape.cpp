#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "meanscape/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const meanscape::CommandResult r = meanscape::cli_run(args, std::cin);
    if (!r.error_output.empty()) std::cerr << r.error_output;
    if (r.out_path) {
        std::ofstream f(*r.out_path, std::ios::binary);
        if (!f || !(f << r.output)) {
            std::cerr << "meanscape: cannot write " << *r.out_path << "\n";
            return 1;
        }
    } else {
        std::cout << r.output;
    }
    return r.exit_code;
}
