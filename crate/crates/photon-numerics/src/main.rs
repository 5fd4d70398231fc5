fn main() {
    photon_numerics::cli::run();
}
