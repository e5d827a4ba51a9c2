#include <cstdio>
int main() { std::puts("wnprop placeholder"); return 0; }
