// placeholder; full CLI lands with the io module wiring
int main() { return 0; }
