package shop.core;

public interface Identified {
    long getId();
}
