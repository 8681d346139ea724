#include <cstdio>
int main(){ std::puts("netlocc"); return 0; }
