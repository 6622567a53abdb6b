#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::printf("uavdet CLI placeholder\n");
    return 2;
}
