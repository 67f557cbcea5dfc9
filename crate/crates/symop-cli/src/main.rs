fn main() { println!("symop"); }
