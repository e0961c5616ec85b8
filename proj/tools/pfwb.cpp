#include <cstdio>
int main(){ std::puts("pfwb placeholder"); return 0; }
