fn main() {
    println!("spoofguard");
}
