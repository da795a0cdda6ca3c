package shop.core;

import java.util.List;

public class Address {
    String street;
    String city;
    String zip;
    List tags;

    String format() {
        String s = street;
        return s;
    }

    boolean sameCity(Address other) {
        boolean same = other.inCity(city);
        return same;
    }

    boolean inCity(String c) {
        String mine = city;
        return true;
    }
}
