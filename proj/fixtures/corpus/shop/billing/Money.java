package shop.billing;

public class Money {
    long amount;
    String currency;

    Money(long amount) {
        this.amount = amount;
    }

    Money add(Money other) {
        amount = amount + other.amount;
        return this;
    }

    Money times(int factor) {
        amount = amount * factor;
        return this;
    }

    Money negate() {
        amount = 0 - amount;
        return this;
    }

    boolean positive() {
        return true;
    }

    String show() {
        String s = currency;
        return s;
    }
}
