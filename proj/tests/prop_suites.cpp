#include <iostream>

#include "prop_impl.hpp"

int main() {
    constexpr int kCases = 200;
    size_t count = 0;
    const prop::Suite* table = prop::suites(count);
    long total_failures = 0;
    for (size_t i = 0; i < count; ++i) {
        long failures = table[i].run(kCases, std::cout);
        std::cout << table[i].name << ": " << kCases << " cases, " << failures << " failures\n";
        total_failures += failures;
    }
    if (total_failures) {
        std::cout << "property suites FAILED (" << total_failures << " failures)\n";
        return 1;
    }
    std::cout << "property suites OK\n";
    return 0;
}
